// Finite colorings of 1..N and the generators for every family used here:
// fractional-part classes, finite-gap blocks, residues, products, and
// circle-rotation codings. Also factor complexity of the resulting words.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ramsey/certificate.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/exactnum.hpp"

namespace ramsey {

using Color = std::uint8_t;

// Materialized words are capped; the scans need random access.
constexpr std::size_t kMaxColoringLength = 10'000'000;
constexpr int kMaxColors = 255;

/// A word over colors 1..r indexed by positions 1..N.
class Coloring {
 public:
  Coloring() = default;
  Coloring(int r, std::vector<Color> word, json provenance = json::object())
      : r_(r), word_(std::move(word)), provenance_(std::move(provenance)) {
    if (r_ < 1 || r_ > kMaxColors) throw InputError("color count must be in [1, 255]");
    for (Color c : word_) {
      if (c < 1 || c > r_) throw InputError("color " + std::to_string(c) + " outside 1.." + std::to_string(r_));
    }
  }

  int r() const { return r_; }
  std::size_t size() const { return word_.size(); }
  /// 1-based.
  Color operator()(std::size_t x) const { return word_[x - 1]; }
  const std::vector<Color>& word() const { return word_; }
  const json& provenance() const { return provenance_; }

  Coloring prefix(std::size_t n) const {
    return {r_, std::vector<Color>(word_.begin(), word_.begin() + static_cast<std::ptrdiff_t>(n)), provenance_};
  }

  friend bool operator==(const Coloring& a, const Coloring& b) { return a.r_ == b.r_ && a.word_ == b.word_; }

 private:
  int r_ = 1;
  std::vector<Color> word_;
  json provenance_ = json::object();
};

namespace detail {

inline void check_length(std::size_t n) {
  if (n < 1) throw InputError("coloring length must be >= 1");
  if (n > kMaxColoringLength) throw InputError("coloring length exceeds the 10^7 cap");
}

}  // namespace detail

/// chi(x) = i iff frac(alpha x) in [(i-1)/r, i/r). Computed as
/// 1 + floor(r alpha x) - r floor(alpha x), both floors exact.
inline Coloring frac_coloring(const Q5Number& alpha, int r, std::size_t n) {
  detail::check_length(n);
  if (r < 2 || r > kMaxColors) throw InputError("frac_coloring: r must be in [2, 255]");
  const Q5Integral base = Q5Integral::from(alpha);
  std::vector<Color> word(n);
  Q5Integral ax = base;
  Q5Integral rax = base;
  for (std::size_t x = 1; x <= n; ++x) {
    const unsigned long ux = x;
    ax.a = base.a * ux;
    ax.b = base.b * ux;
    rax.a = ax.a * r;
    rax.b = ax.b * r;
    BigInt cls = q5_floor(rax) - r * q5_floor(ax);
    word[x - 1] = static_cast<Color>(cls.get_si() + 1);
  }
  return {r, std::move(word), {{"kind", "frac"}, {"alpha", to_json(alpha)}, {"r", r}}};
}

/// Two colors in alternating blocks of m: chi(x) = 1 iff x mod 2m in {1..m}.
inline Coloring block_coloring(std::size_t m, std::size_t n) {
  detail::check_length(n);
  if (m < 1) throw InputError("block_coloring: m must be >= 1");
  std::vector<Color> word(n);
  for (std::size_t x = 1; x <= n; ++x) {
    const std::size_t res = x % (2 * m);
    word[x - 1] = (res >= 1 && res <= m) ? 1 : 2;
  }
  return {2, std::move(word), {{"kind", "block"}, {"m", m}}};
}

/// color = (x mod m) + 1
inline Coloring residue_coloring(std::size_t m, std::size_t n) {
  detail::check_length(n);
  if (m < 2 || m > static_cast<std::size_t>(kMaxColors)) throw InputError("residue_coloring: m must be in [2, 255]");
  std::vector<Color> word(n);
  for (std::size_t x = 1; x <= n; ++x) word[x - 1] = static_cast<Color>(x % m + 1);
  return {static_cast<int>(m), std::move(word), {{"kind", "residue"}, {"m", m}}};
}

/// Pair (c1, c2) encoded as (c1 - 1) r2 + c2.
inline Coloring product_coloring(const Coloring& first, const Coloring& second) {
  if (first.size() != second.size()) throw InputError("product_coloring: length mismatch");
  const int r = first.r() * second.r();
  if (r > kMaxColors) throw InputError("product_coloring: more than 255 colors");
  std::vector<Color> word(first.size());
  for (std::size_t x = 1; x <= first.size(); ++x) {
    word[x - 1] = static_cast<Color>((first(x) - 1) * second.r() + second(x));
  }
  return {r, std::move(word),
          {{"kind", "product"}, {"first", first.provenance()}, {"second", second.provenance()}}};
}

/// Half-open arc [lo, hi) of the circle R/Z, with 0 <= lo < hi <= 1.
struct Arc {
  Q5Number lo;
  Q5Number hi;
};

/// chi(n) = 1 iff frac(x0 + n alpha) lies in one of the arcs, else 2.
inline Coloring rotation_word(const Q5Number& alpha, const Q5Number& x0, const std::vector<Arc>& arcs, std::size_t n) {
  detail::check_length(n);
  if (arcs.empty()) throw InputError("rotation_word: need at least one arc");
  json arcs_json = json::array();
  for (const auto& arc : arcs) {
    if (q5_sign(arc.lo) < 0 || q5_sign(arc.hi - arc.lo) <= 0 || q5_sign(Q5Number(1) - arc.hi) < 0) {
      throw InputError("rotation_word: arcs need 0 <= lo < hi <= 1");
    }
    arcs_json.push_back({to_json(arc.lo), to_json(arc.hi)});
  }
  std::vector<Color> word(n);
  Q5Number point = x0;
  for (std::size_t i = 1; i <= n; ++i) {
    point += alpha;
    point = frac(point);
    bool inside = false;
    for (const auto& arc : arcs) {
      if (q5_sign(point - arc.lo) >= 0 && q5_sign(arc.hi - point) > 0) {
        inside = true;
        break;
      }
    }
    word[i - 1] = inside ? 1 : 2;
  }
  return {2, std::move(word),
          {{"kind", "rotation"}, {"alpha", to_json(alpha)}, {"x0", to_json(x0)}, {"arcs", arcs_json}}};
}

/// Single cut: C1 = [0, cut) with 0 < cut < 1.
inline Coloring rotation_word(const Q5Number& alpha, const Q5Number& x0, const Q5Number& cut, std::size_t n) {
  if (q5_sign(cut) <= 0 || q5_sign(Q5Number(1) - cut) <= 0) throw InputError("rotation_word: need 0 < cut < 1");
  return rotation_word(alpha, x0, std::vector<Arc>{{Q5Number(0), cut}}, n);
}

/// Rotation by phi - 1 coded by an arc of length 1 - (phi - 1): a Sturmian word.
inline Coloring golden_rotation_word(std::size_t n) {
  const Q5Number alpha = Q5Number::phi() - Q5Number(1);
  return rotation_word(alpha, Q5Number(0), Q5Number(1) - alpha, n);
}

/// Number of distinct length-n factors.
inline std::size_t complexity(const Coloring& chi, std::size_t n) {
  if (n < 1 || n > chi.size()) throw InputError("complexity: need 1 <= n <= N");
  const auto* data = reinterpret_cast<const char*>(chi.word().data());
  std::unordered_set<std::string_view> factors;
  for (std::size_t i = 0; i + n <= chi.size(); ++i) factors.emplace(data + i, n);
  return factors.size();
}

// Named colorings that reproduce the explicit constructions.
inline Q5Number preset_alpha(std::string_view name) {
  if (name == "sqrt5over8") return {0, BigRational(1, 8)};
  // (1 + phi)/4 = (3 + sqrt5)/8
  if (name == "oneplusphiover4") return {BigRational(3, 8), BigRational(1, 8)};
  throw InputError("unknown coloring preset '" + std::string(name) + "'");
}

inline Coloring preset_coloring(std::string_view name, std::size_t n) {
  Coloring chi = frac_coloring(preset_alpha(name), 2, n);
  json prov = chi.provenance();
  prov["preset"] = std::string(name);
  return {chi.r(), chi.word(), prov};
}

// Run-length JSON: {"r":2,"N":8,"runs":[[1,2],[2,2],...],"provenance":{...}}
inline json to_rle_json(const Coloring& chi) {
  json runs = json::array();
  std::size_t i = 0;
  while (i < chi.size()) {
    std::size_t j = i;
    while (j < chi.size() && chi.word()[j] == chi.word()[i]) ++j;
    runs.push_back({chi.word()[i], j - i});
    i = j;
  }
  return {{"r", chi.r()}, {"N", chi.size()}, {"runs", runs}, {"provenance", chi.provenance()}};
}

inline Coloring coloring_from_rle_json(const json& j) {
  const int r = j.at("r").get<int>();
  std::vector<Color> word;
  for (const auto& run : j.at("runs")) {
    const int c = run.at(0).get<int>();
    const auto len = run.at(1).get<std::size_t>();
    if (c < 1 || c > r) throw InputError("run color outside 1..r");
    word.insert(word.end(), len, static_cast<Color>(c));
  }
  if (j.contains("N") && j.at("N").get<std::size_t>() != word.size()) throw InputError("runs do not sum to N");
  return {r, std::move(word), j.value("provenance", json::object())};
}

// One character per position: colors 1..9 as digits, 10.. as 'a'...
inline std::string to_text(const Coloring& chi) {
  if (chi.r() > 35) throw InputError("text export supports at most 35 colors");
  std::string out;
  out.reserve(chi.size());
  for (Color c : chi.word()) out.push_back(c < 10 ? static_cast<char>('0' + c) : static_cast<char>('a' + c - 10));
  return out;
}

inline Coloring coloring_from_text(std::string_view text, int r = 0) {
  std::vector<Color> word;
  int seen = 1;
  for (char ch : text) {
    int c = 0;
    if (ch >= '1' && ch <= '9') {
      c = ch - '0';
    } else if (ch >= 'a' && ch <= 'z') {
      c = ch - 'a' + 10;
    } else if (ch == '\n' || ch == '\r' || ch == ' ') {
      continue;
    } else {
      throw InputError(std::string("bad color character '") + ch + "'");
    }
    seen = std::max(seen, c);
    word.push_back(static_cast<Color>(c));
  }
  return {r > 0 ? r : seen, std::move(word), {{"kind", "text"}}};
}

}  // namespace ramsey
