#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sunid/exact.hpp"

// (q+1)-omino configuration engine for the reduced identity with closed form
// q^{m-k} (1+q)^k. A block covers q+1 consecutive vertices inside the omino
// range; the active windows are blocks and uncovered strings W^q B, toggled at
// the leftmost occurrence. Requires q >= 1: with q = 0 every in-range vertex
// would sit in an active window and the survivor structure degenerates (the
// formula evaluator in sums still covers q = 0).
namespace sunid::ominoes {

enum class MoveKind { OminoToWord, WordToOmino };

struct OminoConfig {
  int m = 0, k = 0, b = 0, q = 1;
  std::vector<int> ominoes;  // sorted start positions p, each covering {p..p+q}
  std::vector<int> blacks;   // sorted vertex positions

  int ground_size() const { return (q + 1) * m + b; }
  int range_size() const { return ground_size() - k; }
  int block_len() const { return q + 1; }

  bool covered(int pos) const {
    for (int p : ominoes)
      if (pos >= p && pos <= p + q) return true;
    return false;
  }
  bool black(int pos) const {
    return std::binary_search(blacks.begin(), blacks.end(), pos);
  }
  bool omino_at(int pos) const {
    return std::binary_search(ominoes.begin(), ominoes.end(), pos);
  }

  friend bool operator==(const OminoConfig& a, const OminoConfig& b) {
    return a.m == b.m && a.k == b.k && a.b == b.b && a.q == b.q &&
           a.ominoes == b.ominoes && a.blacks == b.blacks;
  }
  friend bool operator<(const OminoConfig& a, const OminoConfig& b) {
    if (a.ominoes != b.ominoes) return a.ominoes < b.ominoes;
    return a.blacks < b.blacks;
  }
};

inline void require_params(int m, int k, int b, int q) {
  if (m < 0 || k < 0 || k > m || b < 0)
    throw std::domain_error("omino parameters require 0 <= k <= m and b >= 0");
  if (q < 1) throw std::domain_error("omino engine requires q >= 1");
}

inline std::optional<std::string> invariant_violation(const OminoConfig& c) {
  if (c.m < 0 || c.k < 0 || c.k > c.m || c.b < 0 || c.q < 1)
    return "parameters out of range";
  const int range = c.range_size();
  int prev = -c.block_len() - 1;
  for (int p : c.ominoes) {
    if (p < 1 || p + c.q > range) return "omino outside the omino range";
    if (p - prev < c.block_len()) return "overlapping ominoes";
    prev = p;
  }
  prev = 0;
  for (int v : c.blacks) {
    if (v <= prev) return "black positions not strictly increasing";
    if (v > c.ground_size()) return "black vertex outside the ground set";
    if (c.covered(v)) return "black vertex covered by an omino";
    prev = v;
  }
  if (static_cast<int>(c.blacks.size()) != c.m - static_cast<int>(c.ominoes.size()))
    return "#blacks must equal m - #ominoes";
  return std::nullopt;
}

inline void validate(const OminoConfig& c) {
  if (auto why = invariant_violation(c))
    throw std::invalid_argument("invalid configuration: " + *why);
}

inline Integer weight(const OminoConfig& c) {
  return c.ominoes.size() % 2 == 0 ? Integer(1) : Integer(-1);
}

struct ActiveWindow {
  int position = 0;
  MoveKind kind = MoveKind::OminoToWord;
};

/// A window (p .. p+q) is active iff an omino starts at p, or the first q
/// vertices are uncovered white and the last is uncovered black; the whole
/// window must lie inside the omino range.
inline std::optional<ActiveWindow> leftmost_active_tuple(const OminoConfig& c) {
  const int range = c.range_size();
  for (int p = 1; p + c.q <= range; ++p) {
    if (c.omino_at(p)) return ActiveWindow{p, MoveKind::OminoToWord};
    bool word = true;
    for (int v = p; v < p + c.q && word; ++v)
      if (c.covered(v) || c.black(v)) word = false;
    if (word && !c.covered(p + c.q) && c.black(p + c.q))
      return ActiveWindow{p, MoveKind::WordToOmino};
  }
  return std::nullopt;
}

struct InvolutionOutcome {
  std::optional<OminoConfig> partner;  // nullopt: fixed point
  int site = 0;
  MoveKind kind = MoveKind::OminoToWord;
  bool is_fixed() const { return !partner.has_value(); }
};

/// Toggles the leftmost active window: omino <-> W^q B. Preserves
/// #ominoes + #blacks and flips the weight.
inline InvolutionOutcome involute(const OminoConfig& c) {
  require_params(c.m, c.k, c.b, c.q);
  const auto act = leftmost_active_tuple(c);
  if (!act) return {};
  OminoConfig d = c;
  const int p = act->position;
  const int black_pos = p + c.q;
  if (act->kind == MoveKind::OminoToWord) {
    d.ominoes.erase(std::find(d.ominoes.begin(), d.ominoes.end(), p));
    d.blacks.insert(std::upper_bound(d.blacks.begin(), d.blacks.end(), black_pos),
                    black_pos);
  } else {
    d.blacks.erase(std::find(d.blacks.begin(), d.blacks.end(), black_pos));
    d.ominoes.insert(std::upper_bound(d.ominoes.begin(), d.ominoes.end(), p), p);
  }
  return InvolutionOutcome{std::move(d), p, act->kind};
}

/// Yields every valid configuration exactly once, lexicographically by
/// omino-start list and then by black set. The callback receives a reused
/// reference; copy to keep.
template <class Fn>
void enumerate(int m, int k, int b, int q, Fn&& fn) {
  require_params(m, k, b, q);
  OminoConfig c;
  c.m = m;
  c.k = k;
  c.b = b;
  c.q = q;
  const int ground = c.ground_size();
  const int range = c.range_size();

  std::vector<int> uncovered;
  uncovered.reserve(ground);

  auto color = [&](auto&& self, std::size_t from, int remaining) -> void {
    if (remaining == 0) {
      fn(static_cast<const OminoConfig&>(c));
      return;
    }
    for (std::size_t i = from;
         i + static_cast<std::size_t>(remaining) <= uncovered.size(); ++i) {
      c.blacks.push_back(uncovered[i]);
      self(self, i + 1, remaining - 1);
      c.blacks.pop_back();
    }
  };
  auto emit = [&] {
    const int need = m - static_cast<int>(c.ominoes.size());
    uncovered.clear();
    for (int v = 1; v <= ground; ++v)
      if (!c.covered(v)) uncovered.push_back(v);
    if (need < 0 || need > static_cast<int>(uncovered.size())) return;
    color(color, 0, need);
  };
  auto place = [&](auto&& self, int from) -> void {
    emit();
    if (static_cast<int>(c.ominoes.size()) >= m) return;
    for (int p = from; p + q <= range; ++p) {
      c.ominoes.push_back(p);
      self(self, p + q + 1);
      c.ominoes.pop_back();
    }
  };
  place(place, 1);
}

inline std::vector<OminoConfig> enumerate_all(int m, int k, int b, int q) {
  std::vector<OminoConfig> out;
  enumerate(m, k, b, q, [&](const OminoConfig& c) { out.push_back(c); });
  return out;
}

/// Constructs the fixed points directly: no omino, j blacks chosen among the
/// last k vertices, and the in-range word W^{i_1} B ... W^{i_{m-j}} B W...W
/// with every gap i_l in [0, q-1], so no W^q B window fits in the range.
template <class Fn>
void fixed_points(int m, int k, int b, int q, Fn&& fn) {
  require_params(m, k, b, q);
  OminoConfig c;
  c.m = m;
  c.k = k;
  c.b = b;
  c.q = q;
  const int ground = c.ground_size();
  const int range = c.range_size();

  std::vector<int> outside;
  std::vector<int> gaps;

  auto emit = [&] {
    c.blacks.clear();
    int pos = 0;
    for (int g : gaps) {
      pos += g + 1;  // g whites then a black
      c.blacks.push_back(pos);
    }
    if (pos > range) return;  // cannot happen for valid parameters
    c.blacks.insert(c.blacks.end(), outside.begin(), outside.end());
    fn(static_cast<const OminoConfig&>(c));
  };
  auto choose_gaps = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      emit();
      return;
    }
    for (int g = 0; g < q; ++g) {
      gaps.push_back(g);
      self(self, remaining - 1);
      gaps.pop_back();
    }
  };
  auto subsets = [&](auto&& self, int from) -> void {
    choose_gaps(choose_gaps, m - static_cast<int>(outside.size()));
    for (int v = from; v <= ground; ++v) {
      outside.push_back(v);
      self(self, v + 1);
      outside.pop_back();
    }
  };
  subsets(subsets, range + 1);
}

inline std::vector<OminoConfig> fixed_points_all(int m, int k, int b, int q) {
  std::vector<OminoConfig> out;
  fixed_points(m, k, b, q, [&](const OminoConfig& c) { out.push_back(c); });
  return out;
}

inline Integer fixed_count_closed(int m, int k, int q) {
  return int_pow(Integer(q), m - k) * int_pow(Integer(q + 1), k);
}

// Trace encoding mirrors the domino one; a block is rendered as q+1 dots in
// brackets, e.g. "[...]" for q = 2.

inline std::string to_trace(const OminoConfig& c) {
  std::ostringstream out;
  const int ground = c.ground_size();
  const int range = c.range_size();
  bool first = true;
  for (int v = 1; v <= ground; ++v) {
    if (!first) out << ' ';
    first = false;
    if (c.omino_at(v)) {
      out << '[' << std::string(c.block_len(), '.') << ']';
      v += c.q;
    } else {
      out << (c.black(v) ? 'B' : 'W');
    }
    if (v == range && range < ground) out << " |";
  }
  return out.str();
}

inline OminoConfig parse_trace(int m, int k, int b, int q, const std::string& text) {
  require_params(m, k, b, q);
  OminoConfig c;
  c.m = m;
  c.k = k;
  c.b = b;
  c.q = q;
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
      const auto dots = static_cast<int>(tok.size()) - 2;
      if (dots != c.block_len() ||
          tok.find_first_not_of('.', 1) != tok.size() - 1)
        throw std::invalid_argument("omino token must be [" +
                                    std::string(c.block_len(), '.') + "], got " + tok);
      c.ominoes.push_back(pos);
      pos += c.block_len();
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

}  // namespace sunid::ominoes
