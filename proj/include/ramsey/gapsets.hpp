// Gap sets D of positive integers: rule descriptions, bounded
// enumeration, and the set transforms used to move between them.
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ramsey/certificate.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/exactnum.hpp"

namespace ramsey {

struct GapSetSpec {
  enum class Kind {
    fibonacci,
    even_fibonacci,
    pell,
    geometric,
    polynomial,
    nonmultiples,
    primes,
    explicit_list,
    union_of,
    divided,
    multiples_filtered,
    shifted,
  };

  Kind kind = Kind::explicit_list;
  BigInt parameter;                   // geometric base, modulus m, divisor d, or shift c
  std::vector<BigRational> coeffs;    // polynomial, highest degree first, constant last
  std::vector<BigInt> elements;       // explicit_list
  std::vector<GapSetSpec> children;   // union_of (any number) or the wrapped set

  static GapSetSpec fibonacci() { return GapSetSpec{Kind::fibonacci}; }
  static GapSetSpec even_fibonacci() { return GapSetSpec{Kind::even_fibonacci}; }
  static GapSetSpec pell() { return GapSetSpec{Kind::pell}; }
  static GapSetSpec primes() { return GapSetSpec{Kind::primes}; }
  static GapSetSpec geometric(BigInt base) { return GapSetSpec{Kind::geometric, std::move(base)}; }
  static GapSetSpec nonmultiples(BigInt m) { return GapSetSpec{Kind::nonmultiples, std::move(m)}; }
  static GapSetSpec polynomial(std::vector<BigRational> c) {
    GapSetSpec s{Kind::polynomial};
    s.coeffs = std::move(c);
    return s;
  }
  // p(x) = x, i.e. all of N.
  static GapSetSpec naturals() { return polynomial({BigRational(1), BigRational(0)}); }
  static GapSetSpec explicit_set(std::vector<BigInt> e) {
    GapSetSpec s{Kind::explicit_list};
    s.elements = std::move(e);
    return s;
  }
  static GapSetSpec union_of(std::vector<GapSetSpec> parts) {
    GapSetSpec s{Kind::union_of};
    s.children = std::move(parts);
    return s;
  }
  static GapSetSpec shifted(GapSetSpec inner, BigInt c) {
    GapSetSpec s{Kind::shifted, std::move(c)};
    s.children.push_back(std::move(inner));
    return s;
  }

  friend bool operator==(const GapSetSpec&, const GapSetSpec&) = default;
};

/// {a/d : a in A, d | a}
inline GapSetSpec divide(GapSetSpec spec, const BigInt& d) {
  if (d < 1) throw InputError("divide: divisor must be >= 1");
  if (d == 1) return spec;
  GapSetSpec s{GapSetSpec::Kind::divided, d};
  s.children.push_back(std::move(spec));
  return s;
}

/// {a in A : d | a}
inline GapSetSpec filter_multiples(GapSetSpec spec, const BigInt& d) {
  if (d < 1) throw InputError("filter_multiples: divisor must be >= 1");
  if (d == 1) return spec;
  GapSetSpec s{GapSetSpec::Kind::multiples_filtered, d};
  s.children.push_back(std::move(spec));
  return s;
}

/// Strictly increasing elements of D that are <= bound; complete up to bound.
template <class Int>
struct BasicGapSetView {
  std::vector<Int> elements;
  Int bound{};

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
  const Int& operator[](std::size_t i) const { return elements[i]; }
  auto begin() const { return elements.begin(); }
  auto end() const { return elements.end(); }
  bool contains(const Int& x) const { return std::binary_search(elements.begin(), elements.end(), x); }
};

using GapSetView = BasicGapSetView<std::uint64_t>;
using BigGapSetView = BasicGapSetView<BigInt>;

namespace detail {

template <class Int>
Int from_big(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    static_assert(std::is_unsigned_v<Int> && sizeof(Int) <= sizeof(unsigned long));
    if (v < 0 || !v.fits_ulong_p() || v.get_ui() > std::numeric_limits<Int>::max()) {
      throw InputError("value " + v.get_str() + " does not fit the machine integer view");
    }
    return static_cast<Int>(v.get_ui());
  }
}

template <class Int>
BigInt to_big(const Int& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    return BigInt(static_cast<unsigned long>(v));
  }
}

// Linear enumerations materialize every integer up to the bound.
constexpr unsigned long kMaxLinearBound = 400'000'000UL;

inline void check_linear_bound(const BigInt& bound, const char* kind) {
  if (bound > BigInt(kMaxLinearBound)) {
    throw InputError(std::string(kind) + ": bound too large for element-by-element enumeration");
  }
}

inline BigRational eval_poly(const std::vector<BigRational>& coeffs, const BigRational& x) {
  BigRational acc;
  for (const auto& c : coeffs) acc = acc * x + c;
  return acc;
}

// Past this argument p is strictly increasing (Cauchy bound on the roots of p').
inline BigInt poly_monotone_from(const std::vector<BigRational>& coeffs) {
  std::size_t deg = coeffs.size() - 1;
  if (deg <= 1) return 1;
  BigRational lead = coeffs[0] * BigRational(static_cast<long>(deg));
  BigRational worst;
  for (std::size_t i = 1; i < deg; ++i) {
    BigRational c = coeffs[i] * BigRational(static_cast<long>(deg - i));
    worst = std::max(worst, abs(c / lead));
  }
  return worst.ceil() + 2;
}

template <class Int>
void sort_unique(std::vector<Int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Second-order recurrence x_{n+1} = c*x_n + x_{n-1}, emitting terms in [1, bound].
inline std::vector<BigInt> recurrence(BigInt prev, BigInt cur, long c, const BigInt& bound) {
  std::vector<BigInt> out;
  while (cur <= bound) {
    if (cur >= 1) out.push_back(cur);
    BigInt next = c * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Throws InputError for specs that do not denote a set of positive integers.
inline void validate(const GapSetSpec& spec) {
  using K = GapSetSpec::Kind;
  switch (spec.kind) {
    case K::geometric:
      if (spec.parameter < 2) throw InputError("geometric: base must be >= 2");
      break;
    case K::polynomial: {
      if (spec.coeffs.size() < 2) throw InputError("polynomial: need degree >= 1");
      if (spec.coeffs.back().sign() != 0) throw InputError("polynomial: p(0) must be 0");
      if (spec.coeffs.front().sign() <= 0) throw InputError("polynomial: leading coefficient must be positive");
      break;
    }
    case K::nonmultiples:
      if (spec.parameter < 1) throw InputError("nonmultiples: m must be >= 1");
      break;
    case K::explicit_list:
      for (const auto& e : spec.elements) {
        if (e < 1) throw InputError("explicit: elements must be positive, got " + e.get_str());
      }
      break;
    case K::divided:
    case K::multiples_filtered:
      if (spec.parameter < 1) throw InputError("divisor must be >= 1");
      [[fallthrough]];
    case K::shifted:
      if (spec.children.size() != 1) throw InputError("transform needs exactly one inner set");
      validate(spec.children.front());
      break;
    case K::union_of:
      for (const auto& c : spec.children) validate(c);
      break;
    default:
      break;
  }
}

namespace detail {

template <class Int>
std::vector<Int> enumerate_elements(const GapSetSpec& spec, const Int& bound) {
  using K = GapSetSpec::Kind;
  std::vector<Int> out;
  const BigInt big_bound = to_big(bound);
  auto convert = [&](const std::vector<BigInt>& src) {
    out.reserve(src.size());
    for (const auto& v : src) out.push_back(from_big<Int>(v));
  };

  switch (spec.kind) {
    case K::fibonacci:
      // f_2 = 1, f_3 = 2, ...: the repeated 1 appears once.
      convert(recurrence(1, 1, 1, big_bound));
      break;
    case K::even_fibonacci:
      // f_{3n}: e_{n+1} = 4 e_n + e_{n-1}, e_0 = f_0 = 0, e_1 = 2.
      convert(recurrence(0, 2, 4, big_bound));
      break;
    case K::pell:
      convert(recurrence(0, 1, 2, big_bound));
      break;
    case K::geometric: {
      std::vector<BigInt> v;
      for (BigInt x = 1; x <= big_bound; x *= spec.parameter) v.push_back(x);
      convert(v);
      break;
    }
    case K::polynomial: {
      std::vector<BigInt> v;
      const BigInt mono = poly_monotone_from(spec.coeffs);
      for (BigInt n = 1;; ++n) {
        BigRational p = eval_poly(spec.coeffs, BigRational(n));
        if (p > BigRational(big_bound)) {
          if (n >= mono) break;
          continue;
        }
        if (p.is_integer() && p.sign() > 0) v.push_back(p.num());
      }
      sort_unique(v);
      convert(v);
      break;
    }
    case K::nonmultiples: {
      check_linear_bound(big_bound, "nonmultiples");
      const Int m = from_big<Int>(spec.parameter);
      for (Int x = 1; x <= bound; ++x) {
        if (x % m != 0) out.push_back(x);
      }
      break;
    }
    case K::primes: {
      check_linear_bound(big_bound, "primes");
      const auto n = static_cast<std::size_t>(big_bound.get_ui());
      std::vector<bool> composite(n + 1, false);
      for (std::size_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<Int>(static_cast<unsigned long>(i)));
        for (std::size_t j = i * i; j <= n; j += i) composite[j] = true;
      }
      break;
    }
    case K::explicit_list: {
      for (const auto& e : spec.elements) {
        if (e <= big_bound) out.push_back(from_big<Int>(e));
      }
      sort_unique(out);
      break;
    }
    case K::union_of: {
      for (const auto& c : spec.children) {
        auto part = enumerate_elements<Int>(c, bound);
        std::vector<Int> merged;
        merged.reserve(out.size() + part.size());
        std::set_union(out.begin(), out.end(), part.begin(), part.end(), std::back_inserter(merged));
        out = std::move(merged);
      }
      break;
    }
    case K::divided: {
      const BigInt inner_bound = big_bound * spec.parameter;
      for (const auto& a : enumerate_elements<BigInt>(spec.children.front(), inner_bound)) {
        if (a % spec.parameter == 0) out.push_back(from_big<Int>(BigInt(a / spec.parameter)));
      }
      break;
    }
    case K::multiples_filtered: {
      for (const auto& a : enumerate_elements<Int>(spec.children.front(), bound)) {
        if (to_big(a) % spec.parameter == 0) out.push_back(a);
      }
      break;
    }
    case K::shifted: {
      const BigInt inner_bound = big_bound - spec.parameter;
      if (inner_bound >= 1) {
        for (const auto& a : enumerate_elements<BigInt>(spec.children.front(), inner_bound)) {
          BigInt v = a + spec.parameter;
          if (v >= 1) out.push_back(from_big<Int>(v));
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace detail

/// Sorted, deduplicated members of the set that are <= bound.
template <class Int = std::uint64_t>
BasicGapSetView<Int> enumerate(const GapSetSpec& spec, const Int& bound) {
  if (bound < 1) throw InputError("enumerate: bound must be >= 1");
  validate(spec);
  return {detail::enumerate_elements<Int>(spec, bound), bound};
}

/// View of a finite set given by its elements. The set has no members
/// beyond the list, so for machine integers the view is complete up to
/// the type's maximum.
template <class Int>
BasicGapSetView<Int> finite_set(std::vector<Int> elements) {
  detail::sort_unique(elements);
  if (!elements.empty() && elements.front() < 1) throw InputError("gap sets contain positive integers only");
  Int bound{};
  if constexpr (std::is_integral_v<Int>) {
    bound = std::numeric_limits<Int>::max();
  } else {
    bound = elements.empty() ? Int(1) : elements.back();
  }
  return {std::move(elements), bound};
}

inline GapSetView finite_set(std::initializer_list<std::uint64_t> elements) {
  return finite_set(std::vector<std::uint64_t>(elements));
}

template <class Int>
BasicGapSetView<BigInt> to_big_view(const BasicGapSetView<Int>& v) {
  BasicGapSetView<BigInt> out;
  out.bound = detail::to_big(v.bound);
  for (const auto& e : v.elements) out.elements.push_back(detail::to_big(e));
  return out;
}

/// All positive pairwise differences of the prefix, sorted.
template <class Int>
BasicGapSetView<Int> difference_set(const BasicGapSetView<Int>& view) {
  std::vector<Int> diffs;
  for (std::size_t j = 0; j < view.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) diffs.push_back(view[j] - view[i]);
  }
  detail::sort_unique(diffs);
  return {std::move(diffs), view.bound};
}

/// Checks d_{n+1} >= rho * d_n for every enumerated n >= start (1-based).
template <class Int>
Certificate growth_certificate(const BasicGapSetView<Int>& view, const BigRational& rho, std::size_t start = 1) {
  if (view.empty()) throw InputError("growth_certificate: empty view");
  if (rho <= BigRational(1)) throw InputError("growth_certificate: rho must exceed 1");
  if (start < 1) throw InputError("growth_certificate: start index is 1-based");
  Certificate cert;
  cert.claim = "growth";
  cert.parameters = {{"rho", rho.str()}, {"start", start}};
  cert.verified_range = {{"first_index", start}, {"last_index", view.size()}, {"bound", to_json(detail::to_big(view.bound))}};
  cert.pass = true;
  for (std::size_t n = start; n < view.size(); ++n) {
    BigRational lhs(detail::to_big(view[n]));
    BigRational rhs = rho * BigRational(detail::to_big(view[n - 1]));
    if (lhs < rhs) {
      cert.pass = false;
      cert.counterexample = {{"index", n},
                             {"d_n", to_json(detail::to_big(view[n - 1]))},
                             {"d_next", to_json(detail::to_big(view[n]))}};
      break;
    }
  }
  return cert;
}

// JSON set definitions, e.g. {"kind":"geometric","base":2}.
inline json to_json(const GapSetSpec& spec) {
  using K = GapSetSpec::Kind;
  auto inner = [&] { return to_json(spec.children.front()); };
  switch (spec.kind) {
    case K::fibonacci: return {{"kind", "fibonacci"}};
    case K::even_fibonacci: return {{"kind", "even_fibonacci"}};
    case K::pell: return {{"kind", "pell"}};
    case K::primes: return {{"kind", "primes"}};
    case K::geometric: return {{"kind", "geometric"}, {"base", to_json(spec.parameter)}};
    case K::nonmultiples: return {{"kind", "nonmultiples"}, {"m", to_json(spec.parameter)}};
    case K::polynomial: {
      json c = json::array();
      for (const auto& x : spec.coeffs) c.push_back(x.str());
      return {{"kind", "polynomial"}, {"coeffs", c}};
    }
    case K::explicit_list: {
      json e = json::array();
      for (const auto& x : spec.elements) e.push_back(to_json(x));
      return {{"kind", "explicit"}, {"elements", e}};
    }
    case K::union_of: {
      json parts = json::array();
      for (const auto& c : spec.children) parts.push_back(to_json(c));
      return {{"kind", "union"}, {"of", parts}};
    }
    case K::divided: return {{"kind", "divided"}, {"of", inner()}, {"d", to_json(spec.parameter)}};
    case K::multiples_filtered:
      return {{"kind", "multiples_filtered"}, {"of", inner()}, {"d", to_json(spec.parameter)}};
    case K::shifted: return {{"kind", "shifted"}, {"of", inner()}, {"c", to_json(spec.parameter)}};
  }
  throw InternalError("unknown gap set kind");
}

namespace detail {

inline BigInt int_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.dump());
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  throw InputError("expected integer, got " + j.dump());
}

}  // namespace detail

inline GapSetSpec gapset_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("set definition needs a \"kind\" field");
  const auto kind = j.at("kind").get<std::string>();
  auto field = [&](const char* name) -> const json& {
    if (!j.contains(name)) throw InputError("set kind '" + kind + "' needs field '" + name + "'");
    return j.at(name);
  };
  auto num = [&](const char* name) { return detail::int_from_json(field(name)); };
  GapSetSpec spec;
  if (kind == "fibonacci") {
    spec = GapSetSpec::fibonacci();
  } else if (kind == "even_fibonacci") {
    spec = GapSetSpec::even_fibonacci();
  } else if (kind == "pell") {
    spec = GapSetSpec::pell();
  } else if (kind == "primes") {
    spec = GapSetSpec::primes();
  } else if (kind == "geometric") {
    spec = GapSetSpec::geometric(num("base"));
  } else if (kind == "nonmultiples") {
    spec = GapSetSpec::nonmultiples(num("m"));
  } else if (kind == "naturals") {
    spec = GapSetSpec::naturals();
  } else if (kind == "polynomial") {
    std::vector<BigRational> c;
    for (const auto& x : field("coeffs")) c.push_back(rational_from_json(x));
    spec = GapSetSpec::polynomial(std::move(c));
  } else if (kind == "explicit") {
    std::vector<BigInt> e;
    for (const auto& x : field("elements")) e.push_back(detail::int_from_json(x));
    spec = GapSetSpec::explicit_set(std::move(e));
  } else if (kind == "union") {
    std::vector<GapSetSpec> parts;
    for (const auto& x : field("of")) parts.push_back(gapset_from_json(x));
    spec = GapSetSpec::union_of(std::move(parts));
  } else if (kind == "divided") {
    spec = divide(gapset_from_json(field("of")), num("d"));
  } else if (kind == "multiples_filtered") {
    spec = filter_multiples(gapset_from_json(field("of")), num("d"));
  } else if (kind == "shifted") {
    spec = GapSetSpec::shifted(gapset_from_json(field("of")), num("c"));
  } else {
    throw InputError("unknown set kind '" + kind + "'");
  }
  validate(spec);
  return spec;
}

}  // namespace ramsey
