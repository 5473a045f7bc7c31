#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "ighastar/util/check.hpp"
#include "ighastar/util/text.hpp"
#include "ighastar/worlds/elevation_map.hpp"
#include "ighastar/worlds/occupancy_grid.hpp"
#include "ighastar/worlds/query_set.hpp"

namespace ighastar {

static_assert(std::endian::native == std::endian::little,
              "elevation maps are serialized little-endian");

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& source, std::size_t offset,
                                    const std::string& what) {
  std::ostringstream os;
  os << source << ": " << what << " (byte offset " << offset << ")";
  throw parse_error(os.str());
}

/// Consumes "<token>\n" or fails.
inline std::size_t expect_line(const std::string& text, std::size_t offset,
                               const std::string& expected, const std::string& source,
                               const std::string& what) {
  const std::size_t end = text.find('\n', offset);
  if (end == std::string::npos || text.substr(offset, end - offset) != expected)
    parse_fail(source, offset, what);
  return end + 1;
}

struct Header {
  int width;
  int height;
  double cell;
  std::size_t next;
};

inline Header parse_dims_line(const std::string& text, std::size_t offset,
                              const std::string& source) {
  const std::size_t end = text.find('\n', offset);
  if (end == std::string::npos) parse_fail(source, offset, "missing dimensions line");
  std::istringstream is(text.substr(offset, end - offset));
  Header h{0, 0, 0.0, end + 1};
  std::string extra;
  if (!(is >> h.width >> h.height >> h.cell) || (is >> extra) || h.width <= 0 ||
      h.height <= 0 || !(h.cell > 0.0))
    parse_fail(source, offset, "dimensions line must be '<width> <height> <cellsize>'");
  return h;
}

}  // namespace detail

// --- occupancy grids (text, one character per cell) -------------------------

inline std::string save_occupancy(const OccupancyGrid& g) {
  std::string out = "OCC v1\n";
  out += std::to_string(g.width()) + " " + std::to_string(g.height()) + " " +
         fmt_double(g.cell_size()) + "\n";
  for (int iy = 0; iy < g.height(); ++iy) {
    for (int ix = 0; ix < g.width(); ++ix) out += g.occupied_cell(ix, iy) ? '#' : '.';
    out += '\n';
  }
  return out;
}

inline OccupancyGrid load_occupancy(const std::string& text,
                                    const std::string& source = "occupancy") {
  std::size_t off = detail::expect_line(text, 0, "OCC v1", source,
                                        "expected magic line 'OCC v1'");
  const auto h = detail::parse_dims_line(text, off, source);
  off = h.next;
  OccupancyGrid grid(h.width, h.height, h.cell);
  for (int iy = 0; iy < h.height; ++iy) {
    const std::size_t end = text.find('\n', off);
    if (end == std::string::npos || end - off != static_cast<std::size_t>(h.width))
      detail::parse_fail(source, off, "row " + std::to_string(iy) + " must have exactly " +
                                          std::to_string(h.width) + " cells");
    for (int ix = 0; ix < h.width; ++ix) {
      const char c = text[off + static_cast<std::size_t>(ix)];
      if (c != '#' && c != '.')
        detail::parse_fail(source, off + static_cast<std::size_t>(ix),
                           std::string("invalid cell character '") + c + "'");
      grid.set(ix, iy, c == '#');
    }
    off = end + 1;
  }
  if (off != text.size())
    detail::parse_fail(source, off, "trailing data after the last row");
  return grid;
}

// --- elevation maps (binary float32 payload) --------------------------------

inline std::string save_elevation(const ElevationMap& m) {
  std::string out = "ELEV v1\n";
  out += std::to_string(m.width()) + " " + std::to_string(m.height()) + " " +
         fmt_double(m.cell_size()) + "\n";
  const std::size_t payload = m.heights().size() * sizeof(float);
  const std::size_t header = out.size();
  out.resize(header + payload);
  std::memcpy(out.data() + header, m.heights().data(), payload);
  return out;
}

inline ElevationMap load_elevation(const std::string& text,
                                   const std::string& source = "elevation") {
  std::size_t off = detail::expect_line(text, 0, "ELEV v1", source,
                                        "expected magic line 'ELEV v1'");
  const auto h = detail::parse_dims_line(text, off, source);
  off = h.next;
  ElevationMap map(h.width, h.height, h.cell);
  const std::size_t payload =
      static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height) * sizeof(float);
  if (text.size() - off != payload)
    detail::parse_fail(source, off,
                       "payload must be exactly " + std::to_string(payload) + " bytes, got " +
                           std::to_string(text.size() - off));
  std::memcpy(map.heights().data(), text.data() + off, payload);
  for (std::size_t i = 0; i < map.heights().size(); ++i) {
    if (!std::isfinite(map.heights()[i]))
      detail::parse_fail(source, off + i * sizeof(float), "non-finite height value");
  }
  return map;
}

// --- query sets (CSV) --------------------------------------------------------

inline constexpr const char* kQueryCsvHeader = "qid,x_s,y_s,theta_s,v_s,x_g,y_g,r_g";

inline std::string save_queries(const QuerySet& qs) {
  std::string out = std::string(kQueryCsvHeader) + "\n";
  for (const Query& q : qs.queries) {
    out += std::to_string(q.id) + ',' + fmt_double(q.sx) + ',' + fmt_double(q.sy) + ',';
    if (qs.state_dims >= 3) out += fmt_double(q.stheta);
    out += ',';
    if (qs.state_dims >= 4) out += fmt_double(q.sv);
    out += ',' + fmt_double(q.gx) + ',' + fmt_double(q.gy) + ',' + fmt_double(q.radius) + '\n';
  }
  return out;
}

inline QuerySet load_queries(const std::string& text, const std::string& source = "queries") {
  QuerySet qs;
  std::size_t off = detail::expect_line(text, 0, kQueryCsvHeader, source,
                                        "expected header '" + std::string(kQueryCsvHeader) + "'");
  int max_dims = 2;
  while (off < text.size()) {
    const std::size_t end = text.find('\n', off);
    if (end == std::string::npos)
      detail::parse_fail(source, off, "unterminated final line");
    const auto fields = split(text.substr(off, end - off), ',');
    if (fields.size() != 8)
      detail::parse_fail(source, off, "expected 8 comma-separated fields, got " +
                                          std::to_string(fields.size()));
    Query q;
    auto num = [&](const std::string& s, std::size_t field) {
      char* e = nullptr;
      const double v = std::strtod(s.c_str(), &e);
      if (s.empty() || e != s.c_str() + s.size() || !std::isfinite(v))
        detail::parse_fail(source, off, "field " + std::to_string(field) + " is not a number");
      return v;
    };
    q.id = static_cast<int>(num(fields[0], 0));
    q.sx = num(fields[1], 1);
    q.sy = num(fields[2], 2);
    if (!fields[3].empty()) {
      q.stheta = num(fields[3], 3);
      max_dims = std::max(max_dims, 3);
    }
    if (!fields[4].empty()) {
      q.sv = num(fields[4], 4);
      max_dims = std::max(max_dims, 4);
    }
    q.gx = num(fields[5], 5);
    q.gy = num(fields[6], 6);
    q.radius = num(fields[7], 7);
    qs.queries.push_back(q);
    off = end + 1;
  }
  qs.state_dims = max_dims;
  return qs;
}

// --- file helpers -------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw parse_error(path + ": cannot open for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw parse_error(path + ": cannot open for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  IGH_CHECK(static_cast<bool>(f), "short write");
}

}  // namespace ighastar
