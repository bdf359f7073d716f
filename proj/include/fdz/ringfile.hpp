#pragma once

// Line-oriented ring files:
//
//   # comment
//   rank: 3
//   orders: 0 0 2
//   mult 1 1 : 0 0 1
//
// Indices in mult lines are 1-based; absent products are zero.

#include "fdz/ring.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <tuple>

namespace fdz {

class RingFileError : public std::runtime_error {
 public:
  RingFileError(const std::string& msg, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
  std::size_t line;
};

namespace detail {

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline Integer parse_integer(const std::string& w, std::size_t line) {
  std::size_t start = (w.size() > 1 && w[0] == '-') ? 1 : 0;
  if (start == w.size()) throw RingFileError("expected an integer, got '" + w + "'", line);
  for (std::size_t i = start; i < w.size(); ++i)
    if (w[i] < '0' || w[i] > '9') throw RingFileError("expected an integer, got '" + w + "'", line);
  return Integer(w);
}

inline std::size_t parse_index(const std::string& w, std::size_t rank, std::size_t line) {
  Integer v = parse_integer(w, line);
  if (v < 1 || v > Integer(static_cast<unsigned long>(rank)))
    throw RingFileError("index " + w + " is outside 1.." + std::to_string(rank), line);
  return static_cast<std::size_t>(v.get_ui()) - 1;
}

}  // namespace detail

/// Parses a ring file. Syntax problems raise RingFileError; a table that
/// violates the order congruences raises InvalidRing.
inline FdzRing parse_ring_file(const std::string& text) {
  std::optional<std::size_t> rank;
  std::optional<Vector> orders;
  std::vector<std::tuple<std::size_t, std::size_t, Vector, std::size_t>> mults;
  std::istringstream in(text);
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string body = line.substr(first);
    if (body.rfind("rank:", 0) == 0) {
      if (rank) throw RingFileError("duplicate rank line", lineno);
      auto ws = detail::words(body.substr(5));
      if (ws.size() != 1) throw RingFileError("rank line needs exactly one integer", lineno);
      Integer r = detail::parse_integer(ws[0], lineno);
      if (r < 0 || r > 64) throw RingFileError("rank must lie in 0..64", lineno);
      rank = static_cast<std::size_t>(r.get_ui());
    } else if (body.rfind("orders:", 0) == 0) {
      if (orders) throw RingFileError("duplicate orders line", lineno);
      Vector o;
      for (const auto& w : detail::words(body.substr(7))) {
        o.push_back(detail::parse_integer(w, lineno));
        if (o.back() < 0) throw RingFileError("orders must be nonnegative", lineno);
      }
      orders = o;
    } else if (body.rfind("mult", 0) == 0 && (body.size() == 4 || body[4] == ' ' || body[4] == '\t')) {
      if (!rank) throw RingFileError("mult line before the rank line", lineno);
      const auto colon = body.find(':');
      if (colon == std::string::npos) throw RingFileError("mult line needs ':'", lineno);
      auto idx = detail::words(body.substr(4, colon - 4));
      auto val = detail::words(body.substr(colon + 1));
      if (idx.size() != 2) throw RingFileError("mult line needs two indices before ':'", lineno);
      if (val.size() != *rank)
        throw RingFileError("mult line needs " + std::to_string(*rank) + " coordinates after ':'", lineno);
      const std::size_t i = detail::parse_index(idx[0], *rank, lineno), j = detail::parse_index(idx[1], *rank, lineno);
      Vector v;
      for (const auto& w : val) v.push_back(detail::parse_integer(w, lineno));
      mults.emplace_back(i, j, std::move(v), lineno);
    } else {
      throw RingFileError("unrecognized line '" + body + "'", lineno);
    }
  }
  if (!rank) throw RingFileError("missing rank line", 0);
  if (!orders) throw RingFileError("missing orders line", 0);
  if (orders->size() != *rank)
    throw RingFileError("orders line has " + std::to_string(orders->size()) + " entries; rank is " + std::to_string(*rank), 0);
  const std::size_t r = *rank;
  StructureTensor t(r * r, Vector(r, Integer(0)));
  std::vector<bool> seen(r * r, false);
  for (const auto& [i, j, v, ln] : mults) {
    if (seen[i * r + j]) throw RingFileError("duplicate product " + std::to_string(i + 1) + " " + std::to_string(j + 1), ln);
    seen[i * r + j] = true;
    t[i * r + j] = v;
  }
  return validate_ring(*orders, t);
}

inline FdzRing read_ring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RingFileError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ring_file(ss.str());
}

/// Canonical text: optional comment lines, rank, orders, then the nonzero
/// products in row-major order with reduced coordinates.
inline std::string serialize_ring(const FdzRing& a, const std::string& comment = "") {
  std::ostringstream out;
  if (!comment.empty()) {
    std::istringstream c(comment);
    for (std::string l; std::getline(c, l);) out << "# " << l << "\n";
  }
  const std::size_t r = a.rank();
  out << "rank: " << r << "\n";
  out << "orders:";
  for (const auto& d : a.orders()) out << " " << d;
  out << "\n";
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const Vector& v = a.product(i, j);
      bool zero = true;
      for (const auto& x : v) zero = zero && x == 0;
      if (zero) continue;
      out << "mult " << i + 1 << " " << j + 1 << " :";
      for (const auto& x : v) out << " " << x;
      out << "\n";
    }
  return out.str();
}

}  // namespace fdz
