#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sunid/exact.hpp"

// Domino-and-coloring configuration engine for the two reduced identities with
// closed forms 2^k and (2m-k+1) 2^k. Vertices 1..ground_size carry a black or
// white color unless covered by a domino; dominoes live in the prefix
// 1..range_size. The weight of a configuration is (-1)^{#dominoes}, and the
// leftmost-active-pair involution cancels everything except the fixed points.
namespace sunid::dominoes {

enum class Variant { Sun3, Sun4 };

// Color pattern that makes an uncovered pair active: BW = black then white
// (fixed points have in-range blacks flush right), WB = the mirror image.
enum class Orientation { BW, WB };

enum class MoveKind { DominoToPair, PairToDomino };

struct DominoConfig {
  Variant variant = Variant::Sun3;
  int m = 0, k = 0, b = 0;    // b is always 0 for Sun4
  std::vector<int> dominoes;  // sorted start positions p, each covering {p, p+1}
  std::vector<int> blacks;    // sorted vertex positions

  int ground_size() const { return variant == Variant::Sun3 ? 2 * m + b : 2 * m; }
  int range_size() const { return ground_size() - k; }

  bool covered(int pos) const {
    for (int p : dominoes)
      if (pos == p || pos == p + 1) return true;
    return false;
  }
  bool black(int pos) const {
    return std::binary_search(blacks.begin(), blacks.end(), pos);
  }
  bool domino_at(int pos) const {
    return std::binary_search(dominoes.begin(), dominoes.end(), pos);
  }

  friend bool operator==(const DominoConfig& a, const DominoConfig& b) {
    return a.variant == b.variant && a.m == b.m && a.k == b.k && a.b == b.b &&
           a.dominoes == b.dominoes && a.blacks == b.blacks;
  }
  friend bool operator<(const DominoConfig& a, const DominoConfig& b) {
    if (a.dominoes != b.dominoes) return a.dominoes < b.dominoes;
    return a.blacks < b.blacks;
  }
};

inline std::optional<std::string> invariant_violation(const DominoConfig& c) {
  if (c.m < 0 || c.k < 0 || c.k > c.m || c.b < 0) return "parameters out of range";
  if (c.variant == Variant::Sun4 && c.b != 0) return "Sun4 has no b parameter";
  const int range = c.range_size();
  int prev = -2;
  for (int p : c.dominoes) {
    if (p < 1 || p + 1 > range) return "domino outside the domino range";
    if (p - prev < 2) return "overlapping dominoes";
    prev = p;
  }
  prev = 0;
  for (int v : c.blacks) {
    if (v <= prev) return "black positions not strictly increasing";
    if (v > c.ground_size()) return "black vertex outside the ground set";
    if (c.covered(v)) return "black vertex covered by a domino";
    prev = v;
  }
  if (c.variant == Variant::Sun3 &&
      static_cast<int>(c.blacks.size()) != c.m - static_cast<int>(c.dominoes.size()))
    return "Sun3 requires #blacks = m - #dominoes";
  return std::nullopt;
}

inline void validate(const DominoConfig& c) {
  if (auto why = invariant_violation(c))
    throw std::invalid_argument("invalid configuration: " + *why);
}

inline Integer weight(const DominoConfig& c) {
  return c.dominoes.size() % 2 == 0 ? Integer(1) : Integer(-1);
}

struct ActivePair {
  int position = 0;
  MoveKind kind = MoveKind::DominoToPair;
};

/// Scans positions 1..range_size-1 and returns the smallest p such that
/// (p, p+1) is a domino or an uncovered color pair in the active orientation.
inline std::optional<ActivePair> leftmost_active_pair(
    const DominoConfig& c, Orientation o = Orientation::BW) {
  const int range = c.range_size();
  for (int p = 1; p + 1 <= range; ++p) {
    if (c.domino_at(p)) return ActivePair{p, MoveKind::DominoToPair};
    if (c.covered(p) || c.covered(p + 1)) continue;
    const bool first_black = (o == Orientation::BW);
    if (c.black(p) == first_black && c.black(p + 1) == !first_black)
      return ActivePair{p, MoveKind::PairToDomino};
  }
  return std::nullopt;
}

struct InvolutionOutcome {
  std::optional<DominoConfig> partner;  // nullopt: fixed point
  int site = 0;
  MoveKind kind = MoveKind::DominoToPair;
  bool is_fixed() const { return !partner.has_value(); }
};

/// Toggles the leftmost active pair: domino <-> colored pair. Preserves
/// #dominoes + #blacks and changes #dominoes by one, so the weight flips.
inline InvolutionOutcome involute(const DominoConfig& c, Orientation o = Orientation::BW) {
  const auto act = leftmost_active_pair(c, o);
  if (!act) return {};
  DominoConfig d = c;
  const int p = act->position;
  const int black_pos = (o == Orientation::BW) ? p : p + 1;
  if (act->kind == MoveKind::DominoToPair) {
    d.dominoes.erase(std::find(d.dominoes.begin(), d.dominoes.end(), p));
    d.blacks.insert(std::upper_bound(d.blacks.begin(), d.blacks.end(), black_pos),
                    black_pos);
  } else {
    d.blacks.erase(std::find(d.blacks.begin(), d.blacks.end(), black_pos));
    d.dominoes.insert(std::upper_bound(d.dominoes.begin(), d.dominoes.end(), p), p);
  }
  return InvolutionOutcome{std::move(d), p, act->kind};
}

namespace detail {

// Placements in lexicographic order by start list (empty placement first),
// capped at m dominoes; colorings in lexicographic order by black set.
template <class Fn>
void enumerate_impl(Variant variant, int m, int k, int b, Fn&& fn) {
  DominoConfig c;
  c.variant = variant;
  c.m = m;
  c.k = k;
  c.b = (variant == Variant::Sun3) ? b : 0;
  const int ground = c.ground_size();
  const int range = c.range_size();

  std::vector<int> uncovered;
  uncovered.reserve(ground);

  auto color_sun3 = [&](auto&& self, std::size_t from, int remaining) -> void {
    if (remaining == 0) {
      fn(static_cast<const DominoConfig&>(c));
      return;
    }
    for (std::size_t i = from;
         i + static_cast<std::size_t>(remaining) <= uncovered.size(); ++i) {
      c.blacks.push_back(uncovered[i]);
      self(self, i + 1, remaining - 1);
      c.blacks.pop_back();
    }
  };
  auto color_sun4 = [&](auto&& self, std::size_t from) -> void {
    fn(static_cast<const DominoConfig&>(c));
    for (std::size_t i = from; i < uncovered.size(); ++i) {
      c.blacks.push_back(uncovered[i]);
      self(self, i + 1);
      c.blacks.pop_back();
    }
  };

  auto emit = [&] {
    uncovered.clear();
    for (int v = 1; v <= ground; ++v)
      if (!c.covered(v)) uncovered.push_back(v);
    if (variant == Variant::Sun3) {
      const int need = m - static_cast<int>(c.dominoes.size());
      if (need < 0 || need > static_cast<int>(uncovered.size())) return;
      color_sun3(color_sun3, 0, need);
    } else {
      color_sun4(color_sun4, 0);
    }
  };

  auto place = [&](auto&& self, int from) -> void {
    emit();
    if (static_cast<int>(c.dominoes.size()) >= m) return;
    for (int p = from; p + 1 <= range; ++p) {
      c.dominoes.push_back(p);
      self(self, p + 2);
      c.dominoes.pop_back();
    }
  };
  place(place, 1);
}

}  // namespace detail

/// Yields every valid configuration exactly once, lexicographically by
/// domino-start list and then by black set. The callback receives a reference
/// that is reused between calls; copy it to keep it.
template <class Fn>
void enumerate(Variant variant, int m, int k, int b, Fn&& fn) {
  if (m < 0 || k < 0 || k > m || b < 0)
    throw std::domain_error("enumerate requires 0 <= k <= m and b >= 0");
  detail::enumerate_impl(variant, m, k, b, std::forward<Fn>(fn));
}

inline std::vector<DominoConfig> enumerate_all(Variant variant, int m, int k, int b) {
  std::vector<DominoConfig> out;
  enumerate(variant, m, k, b, [&](const DominoConfig& c) { out.push_back(c); });
  return out;
}

/// Constructs the fixed points of the involution directly: no dominoes, and
/// the in-range coloring monotone in the active orientation (BW: whites then
/// blacks; WB: blacks then whites). Out-of-range vertices are colored freely;
/// for Sun3 the in-range black count is forced to m - #outside-blacks.
template <class Fn>
void fixed_points(Variant variant, int m, int k, int b,
                  Orientation o, Fn&& fn) {
  if (m < 0 || k < 0 || k > m || b < 0)
    throw std::domain_error("fixed_points requires 0 <= k <= m and b >= 0");
  DominoConfig c;
  c.variant = variant;
  c.m = m;
  c.k = k;
  c.b = (variant == Variant::Sun3) ? b : 0;
  const int ground = c.ground_size();
  const int range = c.range_size();

  std::vector<int> outside;
  auto emit_with_inside = [&](int inside_count) {
    c.blacks.clear();
    if (o == Orientation::BW) {  // flush right
      for (int v = range - inside_count + 1; v <= range; ++v) c.blacks.push_back(v);
    } else {  // flush left
      for (int v = 1; v <= inside_count; ++v) c.blacks.push_back(v);
    }
    c.blacks.insert(c.blacks.end(), outside.begin(), outside.end());
    std::sort(c.blacks.begin(), c.blacks.end());
    fn(static_cast<const DominoConfig&>(c));
  };
  auto emit = [&] {
    if (variant == Variant::Sun3) {
      const int inside = m - static_cast<int>(outside.size());
      if (inside < 0 || inside > range) return;
      emit_with_inside(inside);
    } else {
      for (int t = 0; t <= range; ++t) emit_with_inside(t);
    }
  };
  auto subsets = [&](auto&& self, int from) -> void {
    emit();
    for (int v = from; v <= ground; ++v) {
      outside.push_back(v);
      self(self, v + 1);
      outside.pop_back();
    }
  };
  subsets(subsets, range + 1);
}

inline std::vector<DominoConfig> fixed_points_all(Variant variant, int m, int k, int b,
                                                  Orientation o = Orientation::BW) {
  std::vector<DominoConfig> out;
  fixed_points(variant, m, k, b, o, [&](const DominoConfig& c) { out.push_back(c); });
  return out;
}

inline Integer fixed_count_closed(Variant variant, int m, int k) {
  const Integer colors = int_pow(Integer(2), k);
  return variant == Variant::Sun3 ? colors : Integer(2 * m - k + 1) * colors;
}

// ---------------------------------------------------------------------------
// Trace encoding: W / B / [..] tokens with | marking the range boundary,
// e.g. "W B B W W W [..] W | B".
// ---------------------------------------------------------------------------

inline std::string to_trace(const DominoConfig& c) {
  std::ostringstream out;
  const int ground = c.ground_size();
  const int range = c.range_size();
  bool first = true;
  for (int v = 1; v <= ground; ++v) {
    if (!first) out << ' ';
    first = false;
    if (c.domino_at(v)) {
      out << "[..]";
      ++v;
    } else {
      out << (c.black(v) ? 'B' : 'W');
    }
    if (v == range && range < ground) out << " |";
  }
  return out.str();
}

inline DominoConfig parse_trace(Variant variant, int m, int k, int b,
                                const std::string& text) {
  DominoConfig c;
  c.variant = variant;
  c.m = m;
  c.k = k;
  c.b = (variant == Variant::Sun3) ? b : 0;
  const int ground = c.ground_size();
  const int range = c.range_size();

  std::istringstream in(text);
  std::string tok;
  int pos = 1;
  bool saw_boundary = false;
  while (in >> tok) {
    if (tok == "|") {
      if (pos != range + 1)
        throw std::invalid_argument("range boundary marker at position " +
                                    std::to_string(pos - 1) + ", expected after " +
                                    std::to_string(range));
      saw_boundary = true;
      continue;
    }
    if (pos > ground) throw std::invalid_argument("more tokens than ground vertices");
    if (tok == "W") {
      ++pos;
    } else if (tok == "B") {
      c.blacks.push_back(pos);
      ++pos;
    } else if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']') {
      if (tok != "[..]")
        throw std::invalid_argument("domino token must be [..], got " + tok);
      c.dominoes.push_back(pos);
      pos += 2;
    } else {
      throw std::invalid_argument("unknown token '" + tok + "'");
    }
  }
  if (pos != ground + 1)
    throw std::invalid_argument("trace covers " + std::to_string(pos - 1) +
                                " vertices, expected " + std::to_string(ground));
  if (range < ground && !saw_boundary)
    throw std::invalid_argument("missing range boundary marker |");
  validate(c);
  return c;
}

}  // namespace sunid::dominoes
