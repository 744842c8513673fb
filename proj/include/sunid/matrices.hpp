#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sunid/exact.hpp"
#include "sunid/polynomial.hpp"

// Matrix-configuration engine for the reduced identity with closed form
// ((m-k) + (m+1)q) q^{m-k-1} (and the constant m+1 when k = m). A
// configuration is a 2 x m marked 0/1 matrix plus, for k < m, an (m-k)-cell
// extension of the top row. The derived sets are
//   K = One positions in top row and extension   (sign contributor)
//   J = One positions in bottom row
//   A = Underlined0 positions in top row and extension (q-colored)
//   B = Underlined0 positions in bottom row           (q-colored, signed)
// Colors are never materialized: each element of A and B contributes one
// factor q to the weight exponent, and all totals live in the polynomial ring
// in q. Weights cancel under a pipeline of four involutions, leaving the
// easily counted survivors.
namespace sunid::matrices {

enum class CellMark : unsigned char { Plain0, One, Underlined0 };

struct QMonomial {
  int sign = 1;  // +1 or -1
  int exponent = 0;

  friend bool operator==(const QMonomial& a, const QMonomial& b) {
    return a.sign == b.sign && a.exponent == b.exponent;
  }
};

struct MatrixConfig {
  int m = 0, k = 0;
  std::vector<CellMark> top, bottom;  // length m
  std::vector<CellMark> ext;          // length m - k, empty when k = m

  friend bool operator==(const MatrixConfig& a, const MatrixConfig& b) {
    return a.m == b.m && a.k == b.k && a.top == b.top && a.bottom == b.bottom &&
           a.ext == b.ext;
  }
  friend bool operator<(const MatrixConfig& a, const MatrixConfig& b) {
    if (a.top != b.top) return a.top < b.top;
    if (a.bottom != b.bottom) return a.bottom < b.bottom;
    return a.ext < b.ext;
  }
};

namespace detail {
inline int count(const std::vector<CellMark>& row, CellMark mark) {
  return static_cast<int>(std::count(row.begin(), row.end(), mark));
}
}  // namespace detail

inline int k_size(const MatrixConfig& c) {
  return detail::count(c.top, CellMark::One) + detail::count(c.ext, CellMark::One);
}
inline int j_size(const MatrixConfig& c) {
  return detail::count(c.bottom, CellMark::One);
}
inline int a_size(const MatrixConfig& c) {
  return detail::count(c.top, CellMark::Underlined0) +
         detail::count(c.ext, CellMark::Underlined0);
}
inline int b_size(const MatrixConfig& c) {
  return detail::count(c.bottom, CellMark::Underlined0);
}

// 1-based positions; extension cell t (0-based) is position m+1+t.
inline std::vector<int> positions_of(const MatrixConfig& c, bool top_row, CellMark mark) {
  std::vector<int> out;
  const auto& row = top_row ? c.top : c.bottom;
  for (int i = 0; i < c.m; ++i)
    if (row[i] == mark) out.push_back(i + 1);
  if (top_row)
    for (std::size_t t = 0; t < c.ext.size(); ++t)
      if (c.ext[t] == mark) out.push_back(c.m + 1 + static_cast<int>(t));
  return out;
}
inline std::vector<int> k_set(const MatrixConfig& c) {
  return positions_of(c, true, CellMark::One);
}
inline std::vector<int> j_set(const MatrixConfig& c) {
  return positions_of(c, false, CellMark::One);
}
inline std::vector<int> a_set(const MatrixConfig& c) {
  return positions_of(c, true, CellMark::Underlined0);
}
inline std::vector<int> b_set(const MatrixConfig& c) {
  return positions_of(c, false, CellMark::Underlined0);
}

/// Length of the run of Plain0 cells terminating the bottom row; an
/// Underlined0 breaks the run.
inline int trailing_plain_zeros(const MatrixConfig& c) {
  int n = 0;
  for (int i = c.m - 1; i >= 0 && c.bottom[i] == CellMark::Plain0; --i) ++n;
  return n;
}

inline bool column_legal(CellMark t, CellMark b) {
  // Allowed columns: (0,0), (0,1), (1,1), (u,1), (0,u).
  switch (t) {
    case CellMark::Plain0:
      return true;
    case CellMark::One:
    case CellMark::Underlined0:
      return b == CellMark::One;
  }
  return false;
}

inline std::optional<std::string> invariant_violation(const MatrixConfig& c) {
  if (c.m < 0 || c.k < 0 || c.k > c.m) return "parameters out of range";
  if (static_cast<int>(c.top.size()) != c.m ||
      static_cast<int>(c.bottom.size()) != c.m)
    return "main matrix rows must have length m";
  if (static_cast<int>(c.ext.size()) != c.m - c.k)
    return "extension must have length m - k";
  for (int i = 0; i < c.m; ++i)
    if (!column_legal(c.top[i], c.bottom[i]))
      return "illegal column at position " + std::to_string(i + 1);
  if (trailing_plain_zeros(c) < k_size(c))
    return "bottom row must end with at least |K| plain zeros";
  return std::nullopt;
}

inline void validate(const MatrixConfig& c) {
  if (auto why = invariant_violation(c))
    throw std::invalid_argument("invalid configuration: " + *why);
}

/// Weight (-1)^{|K|+|B|} q^{|A|+|B|}.
inline QMonomial weight(const MatrixConfig& c) {
  const int sign = (k_size(c) + b_size(c)) % 2 == 0 ? 1 : -1;
  return QMonomial{sign, a_size(c) + b_size(c)};
}

// Anchor column for the tail bijection. The rule pairs configurations through
// the LAST (1,1) column; anchoring at the first one fails to be an involution
// and exists only so the test suites can demonstrate that they would notice.
enum class Bij1Rule { LastColumn, FirstColumn };

struct StepOutcome {
  std::optional<MatrixConfig> partner;  // nullopt: step not applicable
  int site = 0;                         // 1-based column / cell position involved
  bool applicable() const { return partner.has_value(); }
};

/// Step 1: toggle the leftmost underlined column of the main matrix,
/// (0,u) <-> (u,1). Extension underlines do not trigger it. Flips |B| vs |A|
/// so the sign flips and the exponent is preserved.
inline StepOutcome step1_underline(const MatrixConfig& c) {
  for (int i = 0; i < c.m; ++i) {
    if (c.top[i] == CellMark::Underlined0) {
      MatrixConfig d = c;
      d.top[i] = CellMark::Plain0;
      d.bottom[i] = CellMark::Underlined0;
      return StepOutcome{std::move(d), i + 1};
    }
    if (c.bottom[i] == CellMark::Underlined0) {
      MatrixConfig d = c;
      d.top[i] = CellMark::Underlined0;
      d.bottom[i] = CellMark::One;
      return StepOutcome{std::move(d), i + 1};
    }
  }
  return {};
}

namespace detail {

inline bool main_underline_free(const MatrixConfig& c) {
  for (int i = 0; i < c.m; ++i)
    if (c.top[i] == CellMark::Underlined0 || c.bottom[i] == CellMark::Underlined0)
      return false;
  return true;
}

// Index (0-based) of the anchor (1,1) column, or -1.
inline int anchor_column(const MatrixConfig& c, Bij1Rule rule) {
  int found = -1;
  for (int i = 0; i < c.m; ++i)
    if (c.top[i] == CellMark::One && c.bottom[i] == CellMark::One) {
      if (rule == Bij1Rule::FirstColumn) return i;
      found = i;
    }
  return found;
}

// Whether bottom[i] == 0 and bottom[i+1] == 1 somewhere in [from, m).
inline int last_01_start(const MatrixConfig& c, int from) {
  for (int i = c.m - 2; i >= from; --i)
    if (c.bottom[i] == CellMark::Plain0 && c.bottom[i + 1] == CellMark::One) return i;
  return -1;
}

}  // namespace detail

/// Step 2: the tail bijection. Applicable iff the main matrix is
/// underline-free and contains a (1,1) column or a 01 string in the bottom
/// row. tail = bottom entries after the anchor (1,1) column (the whole row if
/// none). If the tail contains 01, the column of the 0 in its last 01 becomes
/// (1,1) and the last 1 of the tail becomes 0; if the tail is 1^s 0^r, the
/// anchor becomes (0,0) and the first 0 of the tail becomes 1. |K| changes by
/// one, so the sign flips; A, B and the extension are untouched.
inline StepOutcome step2_bij1(const MatrixConfig& c, Bij1Rule rule = Bij1Rule::LastColumn) {
  if (!detail::main_underline_free(c)) return {};
  const int anchor = detail::anchor_column(c, rule);
  const int tail_from = anchor + 1;
  const int p01 = detail::last_01_start(c, tail_from);
  if (anchor < 0 && p01 < 0) return {};

  MatrixConfig d = c;
  if (p01 >= 0) {
    // tail contains 01: grow K at the 0 of its last 01
    int last_one = -1;
    for (int i = c.m - 1; i >= tail_from; --i)
      if (c.bottom[i] == CellMark::One) {
        last_one = i;
        break;
      }
    d.top[p01] = CellMark::One;
    d.bottom[p01] = CellMark::One;
    d.bottom[last_one] = CellMark::Plain0;
    return StepOutcome{std::move(d), p01 + 1};
  }
  // tail = 1^s 0^r: shrink K at the anchor
  int first_zero = -1;
  for (int i = tail_from; i < c.m; ++i)
    if (c.bottom[i] == CellMark::Plain0) {
      first_zero = i;
      break;
    }
  if (first_zero < 0)
    throw std::logic_error("step2: no trailing zero; configuration violates the constraint");
  d.top[anchor] = CellMark::Plain0;
  d.bottom[anchor] = CellMark::Plain0;
  d.bottom[first_zero] = CellMark::One;
  return StepOutcome{std::move(d), anchor + 1};
}

namespace detail {

// After steps 1 and 2 the main matrix is reduced: top all Plain0 and bottom
// of the form 1^t 0^{m-t}.
inline bool main_reduced(const MatrixConfig& c) {
  for (int i = 0; i < c.m; ++i)
    if (c.top[i] != CellMark::Plain0) return false;
  int t = 0;
  while (t < c.m && c.bottom[t] == CellMark::One) ++t;
  for (int i = t; i < c.m; ++i)
    if (c.bottom[i] != CellMark::Plain0) return false;
  return true;
}

inline int bottom_ones(const MatrixConfig& c) {
  int t = 0;
  while (t < c.m && c.bottom[t] == CellMark::One) ++t;
  return t;
}

// Leading Underlined0 run of the extension; ext.size() when all underlined.
inline int ext_underline_prefix(const MatrixConfig& c) {
  int i = 0;
  while (i < static_cast<int>(c.ext.size()) && c.ext[i] == CellMark::Underlined0) ++i;
  return i;
}

}  // namespace detail

/// Step 3: with the main matrix reduced to all zeros (t = 0) and the first
/// non-underlined extension entry a = 0, flip the first plain-0/1 entry of the
/// remainder w. Not applicable when w is all underlined (survivor of type B).
inline StepOutcome step3_extflip(const MatrixConfig& c) {
  if (!detail::main_reduced(c) || c.ext.empty()) return {};
  const int prefix = detail::ext_underline_prefix(c);
  if (prefix == static_cast<int>(c.ext.size())) return {};  // all underlined
  if (detail::bottom_ones(c) != 0) return {};
  if (c.ext[prefix] != CellMark::Plain0) return {};
  for (int i = prefix + 1; i < static_cast<int>(c.ext.size()); ++i) {
    if (c.ext[i] == CellMark::Underlined0) continue;
    MatrixConfig d = c;
    d.ext[i] = (c.ext[i] == CellMark::Plain0) ? CellMark::One : CellMark::Plain0;
    return StepOutcome{std::move(d), c.m + 1 + i};
  }
  return {};  // w all underlined: survivor
}

/// Step 4: transfer between the first non-underlined extension entry a and
/// the bottom-row run of ones. a = 1 becomes 0 while the run grows by one;
/// a = 0 (with t >= 1) becomes 1 while the run shrinks. The trailing-zeros
/// constraint guarantees room for the extra 1.
inline StepOutcome step4_transfer(const MatrixConfig& c) {
  if (!detail::main_reduced(c) || c.ext.empty()) return {};
  const int prefix = detail::ext_underline_prefix(c);
  if (prefix == static_cast<int>(c.ext.size())) return {};  // all underlined
  const int t = detail::bottom_ones(c);
  const CellMark a = c.ext[prefix];
  if (a == CellMark::One) {
    if (t >= c.m)
      throw std::logic_error("step4: no room for the extra 1; configuration violates the constraint");
    MatrixConfig d = c;
    d.ext[prefix] = CellMark::Plain0;
    d.bottom[t] = CellMark::One;
    return StepOutcome{std::move(d), c.m + 1 + prefix};
  }
  if (a == CellMark::Plain0 && t >= 1) {
    MatrixConfig d = c;
    d.ext[prefix] = CellMark::One;
    d.bottom[t - 1] = CellMark::Plain0;
    return StepOutcome{std::move(d), c.m + 1 + prefix};
  }
  return {};
}

enum class SurvivorKind {
  InitialSegment,  // k = m: K empty, J an initial segment; weight +1
  TypeA,           // k < m: extension all underlined; weight +q^{m-k}
  TypeB,           // k < m: bottom all plain, ext = u^i 0 u^{m-k-1-i}; weight +q^{m-k-1}
};

struct Classification {
  bool killed = false;
  int step = 0;                // 1..4 when killed
  MatrixConfig partner;        // when killed
  SurvivorKind kind = SurvivorKind::InitialSegment;
};

/// Dispatches to the first applicable pruning step; configurations with no
/// applicable step are the survivors.
inline Classification classify(const MatrixConfig& c, Bij1Rule rule = Bij1Rule::LastColumn) {
  if (auto s1 = step1_underline(c); s1.applicable())
    return Classification{true, 1, std::move(*s1.partner)};
  if (auto s2 = step2_bij1(c, rule); s2.applicable())
    return Classification{true, 2, std::move(*s2.partner)};
  if (auto s3 = step3_extflip(c); s3.applicable())
    return Classification{true, 3, std::move(*s3.partner)};
  if (auto s4 = step4_transfer(c); s4.applicable())
    return Classification{true, 4, std::move(*s4.partner)};
  Classification r;
  if (c.k == c.m)
    r.kind = SurvivorKind::InitialSegment;
  else if (detail::ext_underline_prefix(c) == static_cast<int>(c.ext.size()))
    r.kind = SurvivorKind::TypeA;
  else
    r.kind = SurvivorKind::TypeB;
  return r;
}

// ---------------------------------------------------------------------------
// Enumeration. Main columns run over the legal five-letter alphabet in the
// order (0,0), (0,1), (1,1), (u,1), (0,u); extension cells over 0, 1, u.
// Configurations stream in lexicographic order of the resulting digit string
// (main columns first, then extension cells), filtered by the trailing
// plain-zeros constraint.
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr std::array<std::pair<CellMark, CellMark>, 5> kColumnAlphabet = {{
    {CellMark::Plain0, CellMark::Plain0},
    {CellMark::Plain0, CellMark::One},
    {CellMark::One, CellMark::One},
    {CellMark::Underlined0, CellMark::One},
    {CellMark::Plain0, CellMark::Underlined0},
}};

inline constexpr std::array<CellMark, 3> kExtAlphabet = {
    CellMark::Plain0, CellMark::One, CellMark::Underlined0};

}  // namespace detail

/// Yields every legal configuration exactly once (see order above). The
/// callback receives a reused reference; copy to keep.
template <class Fn>
void enumerate(int m, int k, Fn&& fn) {
  if (m < 0 || k < 0 || k > m)
    throw std::domain_error("enumerate requires 0 <= k <= m");
  MatrixConfig c;
  c.m = m;
  c.k = k;
  c.top.assign(m, CellMark::Plain0);
  c.bottom.assign(m, CellMark::Plain0);
  c.ext.assign(m - k, CellMark::Plain0);

  auto ext_cells = [&](auto&& self, int i) -> void {
    if (i == m - k) {
      if (trailing_plain_zeros(c) >= k_size(c)) fn(static_cast<const MatrixConfig&>(c));
      return;
    }
    for (CellMark mark : detail::kExtAlphabet) {
      c.ext[i] = mark;
      self(self, i + 1);
    }
    c.ext[i] = CellMark::Plain0;
  };
  auto columns = [&](auto&& self, int i) -> void {
    if (i == m) {
      ext_cells(ext_cells, 0);
      return;
    }
    for (const auto& [t, bm] : detail::kColumnAlphabet) {
      c.top[i] = t;
      c.bottom[i] = bm;
      self(self, i + 1);
    }
    c.top[i] = CellMark::Plain0;
    c.bottom[i] = CellMark::Plain0;
  };
  columns(columns, 0);
}

inline std::vector<MatrixConfig> enumerate_all(int m, int k) {
  std::vector<MatrixConfig> out;
  enumerate(m, k, [&](const MatrixConfig& c) { out.push_back(c); });
  return out;
}

/// Signed weight total over all configurations, as an exact polynomial in q.
inline QPoly weight_total(int m, int k) {
  std::vector<Integer> coeffs(static_cast<std::size_t>(2 * m + 1), Integer(0));
  enumerate(m, k, [&](const MatrixConfig& c) {
    const QMonomial w = weight(c);
    coeffs[static_cast<std::size_t>(w.exponent)] += w.sign;
  });
  return QPoly("q", std::move(coeffs));
}

/// Constructive survivor stream, in the documented order (initial-segment
/// length ascending; type A before type B for k < m).
template <class Fn>
void survivors(int m, int k, Fn&& fn) {
  if (m < 0 || k < 0 || k > m)
    throw std::domain_error("survivors requires 0 <= k <= m");
  MatrixConfig c;
  c.m = m;
  c.k = k;
  c.top.assign(m, CellMark::Plain0);
  c.bottom.assign(m, CellMark::Plain0);
  c.ext.assign(m - k, CellMark::Plain0);

  if (k == m) {
    for (int t = 0; t <= m; ++t) {
      std::fill(c.bottom.begin(), c.bottom.end(), CellMark::Plain0);
      std::fill(c.bottom.begin(), c.bottom.begin() + t, CellMark::One);
      fn(static_cast<const MatrixConfig&>(c));
    }
    return;
  }
  // type A: extension all underlined, bottom any initial run of ones
  std::fill(c.ext.begin(), c.ext.end(), CellMark::Underlined0);
  for (int t = 0; t <= m; ++t) {
    std::fill(c.bottom.begin(), c.bottom.end(), CellMark::Plain0);
    std::fill(c.bottom.begin(), c.bottom.begin() + t, CellMark::One);
    fn(static_cast<const MatrixConfig&>(c));
  }
  // type B: bottom all plain, extension all underlined except one plain 0
  std::fill(c.bottom.begin(), c.bottom.end(), CellMark::Plain0);
  for (int i = 0; i < m - k; ++i) {
    std::fill(c.ext.begin(), c.ext.end(), CellMark::Underlined0);
    c.ext[i] = CellMark::Plain0;
    fn(static_cast<const MatrixConfig&>(c));
  }
}

inline std::vector<MatrixConfig> survivors_all(int m, int k) {
  std::vector<MatrixConfig> out;
  survivors(m, k, [&](const MatrixConfig& c) { out.push_back(c); });
  return out;
}

/// (m+1) for k = m; (m+1) q^{m-k} + (m-k) q^{m-k-1} for k < m.
inline QPoly survivor_total_closed(int m, int k) {
  if (k == m) return QPoly::constant("q", Integer(m + 1));
  QPoly r = QPoly::monomial("q", Integer(m + 1), static_cast<std::size_t>(m - k));
  r += QPoly::monomial("q", Integer(m - k), static_cast<std::size_t>(m - k - 1));
  return r;
}

/// Validation mode: enumerates explicit color assignments (each element of A
/// and B independently colored in [q]) and totals the signs one assignment at
/// a time. Must equal weight_total(m, k) evaluated at q.
inline Integer explicit_color_total(int m, int k, long long q) {
  if (q < 1) throw std::domain_error("explicit color enumeration requires q >= 1");
  Integer total{0};
  enumerate(m, k, [&](const MatrixConfig& c) {
    const QMonomial w = weight(c);
    std::vector<long long> colors(static_cast<std::size_t>(w.exponent), 1);
    // odometer over q^{exponent} assignments
    while (true) {
      total += w.sign;
      std::size_t i = 0;
      while (i < colors.size() && colors[i] == q) colors[i++] = 1;
      if (i == colors.size()) break;
      ++colors[i];
    }
  });
  return total;
}

// ---------------------------------------------------------------------------
// Trace encoding: rows of tokens 0 / 1 / u; "TOP[|EXT]/BOTTOM",
// e.g. "0u1011|0u0/110100". Spaces are ignored on input.
// ---------------------------------------------------------------------------

namespace detail {

inline char mark_char(CellMark m) {
  switch (m) {
    case CellMark::Plain0: return '0';
    case CellMark::One: return '1';
    case CellMark::Underlined0: return 'u';
  }
  return '?';
}

inline CellMark char_mark(char ch) {
  switch (ch) {
    case '0': return CellMark::Plain0;
    case '1': return CellMark::One;
    case 'u':
    case 'U': return CellMark::Underlined0;
    default:
      throw std::invalid_argument(std::string("unknown cell mark '") + ch + "'");
  }
}

inline std::vector<CellMark> parse_row(const std::string& s) {
  std::vector<CellMark> out;
  for (char ch : s) {
    if (ch == ' ' || ch == '\t') continue;
    out.push_back(char_mark(ch));
  }
  return out;
}

}  // namespace detail

inline std::string to_trace(const MatrixConfig& c) {
  std::string out;
  for (auto m : c.top) out += detail::mark_char(m);
  if (!c.ext.empty()) {
    out += '|';
    for (auto m : c.ext) out += detail::mark_char(m);
  }
  out += '/';
  for (auto m : c.bottom) out += detail::mark_char(m);
  return out;
}

inline MatrixConfig parse_trace(int m, int k, const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos)
    throw std::invalid_argument("matrix trace needs TOP/BOTTOM separated by '/'");
  std::string top_part = text.substr(0, slash);
  const std::string bottom_part = text.substr(slash + 1);

  MatrixConfig c;
  c.m = m;
  c.k = k;
  const auto bar = top_part.find('|');
  if (bar != std::string::npos) {
    c.ext = detail::parse_row(top_part.substr(bar + 1));
    top_part = top_part.substr(0, bar);
    c.top = detail::parse_row(top_part);
  } else {
    c.top = detail::parse_row(top_part);
    // allow "MAIN EXT" without a bar when lengths make the split unambiguous
    if (static_cast<int>(c.top.size()) == 2 * m - k && k < m) {
      c.ext.assign(c.top.begin() + m, c.top.end());
      c.top.resize(m);
    }
  }
  c.bottom = detail::parse_row(bottom_part);
  validate(c);
  return c;
}

}  // namespace sunid::matrices
