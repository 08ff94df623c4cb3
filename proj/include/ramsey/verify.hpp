// Exhaustive scans for monochromatic D-diffsequences and D-APs, plus the
// Fibonacci facts behind the explicit colorings.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/certificate.hpp"
#include "ramsey/colorings.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/exactnum.hpp"
#include "ramsey/gapsets.hpp"

namespace ramsey {

enum class Structure { diffsequence, ap };

inline const char* to_string(Structure s) { return s == Structure::diffsequence ? "diffsequence" : "ap"; }

struct ScanResult {
  std::size_t length = 0;
  std::vector<std::size_t> witness;  // positions, strictly increasing
  std::size_t scanned = 0;
  Structure structure = Structure::diffsequence;
};

inline json to_json(const ScanResult& s) {
  return {{"length", s.length}, {"witness", s.witness}, {"scanned", s.scanned}, {"structure", to_string(s.structure)}};
}

namespace detail {

inline void require_complete(const GapSetView& d_view, std::size_t n) {
  if (n >= 2 && d_view.bound < n - 1) {
    throw InputError("gap set enumerated only to " + std::to_string(d_view.bound) + ", scan of length " +
                     std::to_string(n) + " needs gaps up to " + std::to_string(n - 1));
  }
}

}  // namespace detail

/// Exact longest monochromatic D-diffsequence:
///   L(x) = 1 + max{ L(x-d) : d in D, x-d >= 1, chi(x-d) = chi(x) }.
inline ScanResult longest_mono_diffseq(const Coloring& chi, const GapSetView& d_view) {
  const std::size_t n = chi.size();
  detail::require_complete(d_view, n);
  std::vector<std::uint32_t> chain(n + 1, 0);
  std::vector<std::size_t> back(n + 1, 0);
  std::size_t best = 0;
  std::size_t best_end = 0;
  for (std::size_t x = 1; x <= n; ++x) {
    std::uint32_t len = 1;
    for (auto d : d_view) {
      if (d >= x) break;
      const std::size_t y = x - d;
      if (chi(y) == chi(x) && chain[y] + 1 > len) {
        len = chain[y] + 1;
        back[x] = y;
      }
    }
    chain[x] = len;
    if (len > best) {
      best = len;
      best_end = x;
    }
  }
  ScanResult out{best, {}, n, Structure::diffsequence};
  for (std::size_t x = best_end; x != 0; x = back[x]) out.witness.push_back(x);
  std::reverse(out.witness.begin(), out.witness.end());
  return out;
}

/// Exact longest monochromatic a, a+d, ..., a+(k-1)d with a single d in D.
inline ScanResult longest_mono_AP(const Coloring& chi, const GapSetView& d_view) {
  const std::size_t n = chi.size();
  detail::require_complete(d_view, n);
  ScanResult out{n > 0 ? 1U : 0U, {}, n, Structure::ap};
  if (n > 0) out.witness = {1};
  std::vector<std::uint32_t> run(n + 1, 0);
  for (auto d : d_view) {
    if (d >= n) break;
    for (std::size_t x = 1; x <= n; ++x) {
      run[x] = (x > d && chi(x - d) == chi(x)) ? run[x - d] + 1 : 1;
      if (run[x] > out.length) {
        out.length = run[x];
        out.witness.clear();
        for (std::size_t i = 0; i < run[x]; ++i) out.witness.push_back(x - (run[x] - 1 - i) * d);
      }
    }
  }
  return out;
}

/// Any same-colored pair a < b with b - a in D? Length 2 with the first such
/// pair (by b, then a) as witness, else length 1.
inline ScanResult chromatically_intersective_check(const Coloring& chi, const GapSetView& d_view) {
  const std::size_t n = chi.size();
  detail::require_complete(d_view, n);
  ScanResult out{n > 0 ? 1U : 0U, {}, n, Structure::diffsequence};
  if (n > 0) out.witness = {1};
  for (std::size_t x = 2; x <= n; ++x) {
    for (auto it = d_view.elements.rbegin(); it != d_view.elements.rend(); ++it) {
      if (*it >= x) continue;
      if (chi(x - *it) == chi(x)) {
        out.length = 2;
        out.witness = {x - static_cast<std::size_t>(*it), x};
        return out;
      }
    }
  }
  return out;
}

/// Least P > 0 with (f_P, f_{P+1}) = (f_0, f_1) mod m.
inline unsigned long pisano_period(unsigned long m) {
  if (m < 2) throw InputError("pisano_period: m must be >= 2");
  unsigned long a = 0;
  unsigned long b = 1 % m;
  for (unsigned long p = 1; p <= 6 * m + 2; ++p) {
    const unsigned long c = (a + b) % m;
    a = b;
    b = c;
    if (a == 0 && b == 1 % m) return p;
  }
  throw InternalError("pisano_period: no cycle found within 6m");
}

/// f_first, f_{first+step}, ... (Binet indexing), count terms.
inline std::vector<BigInt> fibonacci_terms(unsigned long first, unsigned long count, unsigned long step = 1) {
  std::vector<BigInt> out;
  out.reserve(count);
  for (unsigned long i = 0; i < count; ++i) out.push_back(fibonacci(first + i * step));
  return out;
}

namespace detail {

// Residue fact about the sequence n -> g(f mod m) checked over one full
// period of its index map plus n up to an explicit bound with exact integers.
struct ModularFact {
  unsigned long modulus;
  unsigned long first_n;
  unsigned long index_stride;  // the fact at n reads f near stride*n
  std::function<bool(unsigned long, unsigned long m)> holds_mod;  // (n, m) -> fact at n using f mod m
  std::function<bool(unsigned long)> holds_exact;                 // n -> fact at n with exact integers
  std::string statement;
};

inline unsigned long fib_mod(unsigned long n, unsigned long m) {
  BigInt f = fibonacci(n) % m;
  return f.get_ui();
}

inline Certificate run_modular_fact(const std::string& id, const ModularFact& fact, unsigned long range) {
  Certificate cert;
  cert.claim = id;
  cert.parameters = {{"statement", fact.statement}, {"modulus", fact.modulus}};
  const unsigned long period = pisano_period(fact.modulus);
  // f_{s n + c} mod m is periodic in n with period dividing P; one transient
  // period plus one full period covers every reachable residue state.
  const unsigned long periodic_last = fact.first_n + 2 * period;
  cert.pass = true;
  for (unsigned long n = fact.first_n; n <= periodic_last; ++n) {
    if (!fact.holds_mod(n, fact.modulus)) {
      cert.pass = false;
      cert.counterexample = {{"n", n}, {"phase", "period"}};
      break;
    }
  }
  if (cert.pass) {
    for (unsigned long n = fact.first_n; n <= range; ++n) {
      if (!fact.holds_exact(n)) {
        cert.pass = false;
        cert.counterexample = {{"n", n}, {"phase", "range"}};
        break;
      }
    }
  }
  cert.verified_range = {{"pisano_period", period}, {"period_checked_through", periodic_last}, {"range_to", range}};
  cert.status = cert.pass ? ProofStatus::periodic_complete : ProofStatus::range;
  cert.note = "residues repeat with the Pisano period, so the period check covers every n";
  return cert;
}

inline Certificate run_range_fact(const std::string& id, const std::string& statement, unsigned long first,
                                  unsigned long range, const std::function<bool(unsigned long)>& holds) {
  Certificate cert;
  cert.claim = id;
  cert.parameters = {{"statement", statement}};
  cert.verified_range = {{"from", first}, {"to", range}};
  cert.pass = true;
  for (unsigned long n = first; n <= range; ++n) {
    if (!holds(n)) {
      cert.pass = false;
      cert.counterexample = {{"n", n}};
      break;
    }
  }
  return cert;
}

}  // namespace detail

inline const std::vector<std::string>& fib_fact_ids() {
  static const std::vector<std::string> ids = {
      "pisano8",        "mod8_nonzero",       "shift6_mod4",         "mod4_one",
      "binet_sqrt5",    "binet_one_plus_phi", "even_fib_recurrence", "fib_diff_chain",
  };
  return ids;
}

/// Runs one registered Fibonacci fact over n <= range.
inline Certificate check_fib_fact(const std::string& id, unsigned long range) {
  using detail::fib_mod;
  const Q5Number phi_bar = Q5Number::phi_bar();

  if (id == "pisano8") {
    Certificate cert;
    cert.claim = id;
    cert.parameters = {{"statement", "Fibonacci residues mod 8 have period 12"}};
    const unsigned long p = pisano_period(8);
    cert.pass = p == 12;
    cert.verified_range = {{"period", p}};
    if (!cert.pass) cert.counterexample = {{"period", p}};
    cert.status = ProofStatus::periodic_complete;
    return cert;
  }
  if (id == "mod8_nonzero") {
    detail::ModularFact fact{
        8, 1, 1,
        [](unsigned long n, unsigned long m) { return (fib_mod(n - 1, m) + fib_mod(n + 1, m)) % m != 0; },
        [](unsigned long n) { return BigInt(fibonacci(n - 1) + fibonacci(n + 1)) % 8 != 0; },
        "f_{n-1} + f_{n+1} != 0 (mod 8) for n >= 1"};
    return detail::run_modular_fact(id, fact, range);
  }
  if (id == "shift6_mod4") {
    detail::ModularFact fact{
        4, 0, 1,
        [](unsigned long n, unsigned long m) { return fib_mod(n + 6, m) == fib_mod(n, m); },
        [](unsigned long n) { return BigInt(fibonacci(n + 6) - fibonacci(n)) % 4 == 0; },
        "f_{n+6} = f_n (mod 4) for n >= 0"};
    return detail::run_modular_fact(id, fact, range);
  }
  if (id == "mod4_one") {
    detail::ModularFact fact{
        4, 0, 3,
        [](unsigned long n, unsigned long m) { return (fib_mod(3 * n, m) + fib_mod(3 * n + 1, m)) % m == 1; },
        [](unsigned long n) { return BigInt(fibonacci(3 * n) + fibonacci(3 * n + 1)) % 4 == 1; },
        "f_{3n} + f_{3n+1} = 1 (mod 4) for n >= 0"};
    return detail::run_modular_fact(id, fact, range);
  }
  if (id == "binet_sqrt5") {
    return detail::run_range_fact(id, "sqrt5 f_n = f_{n-1} + f_{n+1} - 2 phibar^n", 1, range, [&](unsigned long n) {
      Q5Number lhs = Q5Number::sqrt5() * Q5Number(BigRational(fibonacci(n)));
      Q5Number rhs = Q5Number(BigRational(BigInt(fibonacci(n - 1) + fibonacci(n + 1)))) - Q5Number(2) * pow(phi_bar, n);
      return lhs == rhs;
    });
  }
  if (id == "binet_one_plus_phi") {
    return detail::run_range_fact(id, "(1 + phi) f_n = f_n + f_{n+1} - phibar^n", 1, range, [&](unsigned long n) {
      Q5Number lhs = (Q5Number(1) + Q5Number::phi()) * Q5Number(BigRational(fibonacci(n)));
      Q5Number rhs = Q5Number(BigRational(BigInt(fibonacci(n) + fibonacci(n + 1)))) - pow(phi_bar, n);
      return lhs == rhs;
    });
  }
  if (id == "even_fib_recurrence") {
    return detail::run_range_fact(id, "e_n = 4 e_{n-1} + e_{n-2} with e_n = f_{3n}", 3, range, [](unsigned long n) {
      return fibonacci(3 * n) == 4 * fibonacci(3 * (n - 1)) + fibonacci(3 * (n - 2));
    });
  }
  if (id == "fib_diff_chain") {
    return detail::run_range_fact(id, "f_n - f_{n-1} = f_{n-2}", 3, range, [](unsigned long n) {
      return fibonacci(n) - fibonacci(n - 1) == fibonacci(n - 2);
    });
  }
  throw InputError("unknown fact id '" + id + "'");
}

enum class FracMode { dist_nearest, frac_window };

/// dist_nearest: ||alpha s|| > lower for every s.
/// frac_window: lower < frac(alpha s) < upper for every s.
inline Certificate frac_bound_scan(const Q5Number& alpha, std::span<const BigInt> seq, FracMode mode,
                                   const BigRational& lower, const BigRational& upper = BigRational(1)) {
  if (seq.empty()) throw InputError("frac_bound_scan: empty sequence");
  Certificate cert;
  cert.claim = mode == FracMode::dist_nearest ? "dist_nearest_above" : "frac_in_open_window";
  cert.parameters = {{"alpha", to_json(alpha)}, {"lower", lower.str()}};
  if (mode == FracMode::frac_window) cert.parameters["upper"] = upper.str();
  cert.verified_range = {{"count", seq.size()}};
  cert.pass = true;
  double seen_min = 2.0;
  double seen_max = -1.0;
  const Q5Number lo(lower);
  const Q5Number hi(upper);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Q5Number v = alpha * Q5Number(BigRational(seq[i]));
    const Q5Number value = mode == FracMode::dist_nearest ? dist_nearest_int(v) : frac(v);
    seen_min = std::min(seen_min, value.approx());
    seen_max = std::max(seen_max, value.approx());
    bool ok = q5_sign(value - lo) > 0;
    if (mode == FracMode::frac_window) ok = ok && q5_sign(hi - value) > 0;
    if (!ok) {
      cert.pass = false;
      cert.counterexample = {{"index", i}, {"s", to_json(seq[i])}, {"value", to_json(value)}, {"approx", value.approx()}};
      break;
    }
  }
  cert.verified_range["observed_min"] = seen_min;
  cert.verified_range["observed_max"] = seen_max;
  return cert;
}

}  // namespace ramsey
