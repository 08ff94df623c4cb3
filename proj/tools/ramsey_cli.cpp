// ramsey_cli: gap sets, colorings, scans, Delta search, chromatic bounds and
// the reproduction suite. Prints JSON on stdout.
// Exit codes: 0 ok / assertion held, 1 assertion failed, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ramsey/colorings.hpp"
#include "ramsey/construct.hpp"
#include "ramsey/gapsets.hpp"
#include "ramsey/repro.hpp"
#include "ramsey/search.hpp"
#include "ramsey/verify.hpp"

using namespace ramsey;

namespace {

constexpr int kOk = 0;
constexpr int kAssertFailed = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

// --set accepts inline JSON, a JSON file, or NAME[:PARAM]:
//   fibonacci, even_fibonacci, pell, primes, naturals,
//   geometric:B, nonmultiples:M, explicit:1,2,5
GapSetSpec parse_set(const std::string& arg) {
  if (arg.empty()) throw InputError("empty --set");
  if (arg.front() == '{') return gapset_from_json(parse_json_text(arg, "--set"));
  if (std::filesystem::is_regular_file(arg)) return gapset_from_json(parse_json_text(read_file(arg), arg));
  const auto colon = arg.find(':');
  const std::string name = arg.substr(0, colon);
  const std::string param = colon == std::string::npos ? "" : arg.substr(colon + 1);
  auto need_param = [&] {
    if (param.empty()) throw InputError("set '" + name + "' needs a parameter, e.g. " + name + ":3");
    return parse_bigint(param);
  };
  if (name == "fibonacci") return GapSetSpec::fibonacci();
  if (name == "even_fibonacci") return GapSetSpec::even_fibonacci();
  if (name == "pell") return GapSetSpec::pell();
  if (name == "primes") return GapSetSpec::primes();
  if (name == "naturals") return GapSetSpec::naturals();
  if (name == "geometric") return GapSetSpec::geometric(need_param());
  if (name == "nonmultiples") return GapSetSpec::nonmultiples(need_param());
  if (name == "explicit") {
    std::vector<BigInt> elems;
    std::stringstream ss(param);
    std::string item;
    while (std::getline(ss, item, ',')) elems.push_back(parse_bigint(item));
    if (elems.empty()) throw InputError("explicit set needs elements, e.g. explicit:1,2,5");
    return GapSetSpec::explicit_set(elems);
  }
  throw InputError("unknown set '" + arg + "'");
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  const BigInt v = parse_bigint(text);
  if (v < 0 || !v.fits_ulong_p()) throw InputError(what + " must be a non-negative 64-bit integer");
  return v.get_ui();
}

// Preset name, "a,b" for a + b sqrt5, or a rational "p/q".
Q5Number parse_alpha(const std::string& text) {
  if (text == "sqrt5over8" || text == "oneplusphiover4") return preset_alpha(text);
  return Q5Number::parse(text);
}

// --coloring: preset (sqrt5over8, oneplusphiover4, golden, block:M,
// residue:M, frac:ALPHA), or a file holding run-length JSON or plain text.
Coloring load_coloring(const std::string& arg, std::size_t n, int r) {
  const auto colon = arg.find(':');
  const std::string name = arg.substr(0, colon);
  const std::string param = colon == std::string::npos ? "" : arg.substr(colon + 1);
  auto need_n = [&] {
    if (n == 0) throw InputError("coloring '" + arg + "' needs -N");
    return n;
  };
  if (name == "sqrt5over8" || name == "oneplusphiover4") return preset_coloring(name, need_n());
  if (name == "golden") return golden_rotation_word(need_n());
  if (name == "block") return block_coloring(parse_u64(param, "block size"), need_n());
  if (name == "residue") return residue_coloring(parse_u64(param, "modulus"), need_n());
  if (name == "frac") return frac_coloring(parse_alpha(param), r, need_n());
  if (!std::filesystem::is_regular_file(arg)) throw InputError("unknown coloring '" + arg + "'");
  const std::string text = read_file(arg);
  const auto first = text.find_first_not_of(" \n\r\t");
  Coloring chi = (first != std::string::npos && text[first] == '{')
                     ? coloring_from_rle_json(parse_json_text(text, arg))
                     : coloring_from_text(text);
  if (n != 0) {
    if (n > chi.size()) throw InputError("-N exceeds the stored coloring length");
    chi = chi.prefix(n);
  }
  return chi;
}

void emit(const json& j, const std::string& out_path = "") {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_text(out_path, j.dump(2) + "\n");
  }
}

// Enumerates D as big integers until the growth tail holds `steps` elements.
BasicGapSetView<BigInt> enumerate_for_steps(const GapSetSpec& spec, int r, const BigRational& delta,
                                            std::size_t steps) {
  const BigRational factor = growth_factor(r, delta);
  for (unsigned long bits = 64;; bits *= 2) {
    BasicGapSetView<BigInt> view = enumerate<BigInt>(spec, BigInt(1) << bits);
    if (view.size() >= 2) {
      const std::size_t offset = growth_offset(view, factor);
      if (offset <= view.size() && view.size() - offset + 1 >= steps) return view;
    }
    if (bits >= 8192) return view;  // build_alpha_for reports the shortfall
  }
}

struct Runner {
  std::function<int()> action;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accessibility and large-set toolkit: gap sets, colorings, scans and Delta search"};
  app.require_subcommand(1);
  Runner run;

  // set
  std::string set_arg;
  std::string bound_arg = "1000";
  std::string growth_arg;
  std::size_t growth_start = 1;
  std::size_t show = 1000;
  auto* set_cmd = app.add_subcommand("set", "Enumerate a gap set up to a bound");
  set_cmd->add_option("--set", set_arg, "Gap set: JSON, JSON file, or NAME[:PARAM]")->required();
  set_cmd->add_option("--bound", bound_arg, "Enumerate elements <= bound");
  set_cmd->add_option("--growth", growth_arg, "Assert d_{n+1} >= rho d_n (rational rho)");
  set_cmd->add_option("--start", growth_start, "First 1-based index of the growth check");
  set_cmd->add_option("--show", show, "Print at most this many elements");
  set_cmd->callback([&] {
    run.action = [&] {
      const GapSetSpec spec = parse_set(set_arg);
      const auto view = enumerate<BigInt>(spec, parse_bigint(bound_arg));
      json elems = json::array();
      for (std::size_t i = 0; i < std::min(show, view.size()); ++i) {
        if (view[i].fits_ulong_p()) {
          elems.push_back(view[i].get_ui());
        } else {
          elems.push_back(view[i].get_str());
        }
      }
      json out = {{"set", to_json(spec)}, {"bound", bound_arg}, {"count", view.size()}, {"elements", elems}};
      int code = kOk;
      if (!growth_arg.empty()) {
        auto cert = growth_certificate(view, BigRational::parse(growth_arg), growth_start);
        out["growth"] = to_json(cert);
        if (!cert.pass) code = kAssertFailed;
      }
      emit(out);
      return code;
    };
  });

  // alpha
  int alpha_r = 2;
  std::string delta_arg = "1";
  std::size_t steps = 20;
  std::string q_list;
  auto* alpha_cmd = app.add_subcommand("alpha", "Nested-interval construction of alpha with the full trace");
  alpha_cmd->add_option("--set", set_arg, "Gap set whose growth tail supplies q_n");
  alpha_cmd->add_option("--q", q_list, "Explicit comma-separated q_1,q_2,... instead of --set");
  alpha_cmd->add_option("-r", alpha_r, "Number of colors (>= 2)");
  alpha_cmd->add_option("--delta", delta_arg, "Growth slack delta (rational)");
  alpha_cmd->add_option("--steps", steps, "Number of nested steps m");
  alpha_cmd->callback([&] {
    run.action = [&] {
      const BigRational delta = BigRational::parse(delta_arg);
      AlphaCertificate cert;
      json out;
      if (!q_list.empty()) {
        std::vector<BigInt> q;
        std::stringstream ss(q_list);
        std::string item;
        while (std::getline(ss, item, ',')) q.push_back(parse_bigint(item));
        if (q.empty()) throw InputError("--q is empty");
        cert = build_alpha(q, alpha_r, delta, std::min(steps, q.size()));
        out["q"] = q_list;
      } else {
        if (set_arg.empty()) throw InputError("alpha needs --set or --q");
        const GapSetSpec spec = parse_set(set_arg);
        cert = build_alpha_for(enumerate_for_steps(spec, alpha_r, delta, steps), alpha_r, delta, steps);
        out["set"] = to_json(spec);
      }
      out["delta"] = delta.str();
      out["certificate"] = to_json(cert);
      emit(out);
      return cert.all_pass() ? kOk : kAssertFailed;
    };
  });

  // color
  std::string color_arg;
  std::size_t color_n = 0;
  int color_r = 2;
  std::string format = "rle";
  std::string out_path;
  auto* color_cmd = app.add_subcommand("color", "Generate a coloring of 1..N");
  color_cmd->add_option("--coloring", color_arg,
                        "sqrt5over8 | oneplusphiover4 | golden | block:M | residue:M | frac:ALPHA")
      ->required();
  color_cmd->add_option("-N", color_n, "Length")->required();
  color_cmd->add_option("-r", color_r, "Colors for frac:ALPHA");
  color_cmd->add_option("--format", format, "rle | text")->check(CLI::IsMember({"rle", "text"}));
  color_cmd->add_option("--out", out_path, "Write to this file instead of stdout");
  color_cmd->callback([&] {
    run.action = [&] {
      const Coloring chi = load_coloring(color_arg, color_n, color_r);
      if (format == "text") {
        if (out_path.empty()) {
          std::cout << to_text(chi) << '\n';
        } else {
          write_text(out_path, to_text(chi) + "\n");
        }
      } else {
        emit(to_rle_json(chi), out_path);
      }
      return kOk;
    };
  });

  // scan
  std::string structure = "diffseq";
  std::optional<std::size_t> max_k;
  auto* scan_cmd = app.add_subcommand("scan", "Longest monochromatic D-diffsequence or D-AP");
  scan_cmd->add_option("--coloring", color_arg, "Preset or coloring file")->required();
  scan_cmd->add_option("-N", color_n, "Length (required for presets, optional prefix for files)");
  scan_cmd->add_option("-r", color_r, "Colors for frac:ALPHA");
  scan_cmd->add_option("--set", set_arg, "Gap set")->required();
  scan_cmd->add_option("--structure", structure, "diffseq | ap | pair")
      ->check(CLI::IsMember({"diffseq", "ap", "pair"}));
  scan_cmd->add_option("--max-k", max_k, "Assert the longest structure has at most this many terms");
  scan_cmd->callback([&] {
    run.action = [&] {
      const Coloring chi = load_coloring(color_arg, color_n, color_r);
      const GapSetSpec spec = parse_set(set_arg);
      const auto view = enumerate(spec, std::max<std::uint64_t>(chi.size(), 1));
      ScanResult res;
      if (structure == "ap") {
        res = longest_mono_AP(chi, view);
      } else if (structure == "pair") {
        res = chromatically_intersective_check(chi, view);
      } else {
        res = longest_mono_diffseq(chi, view);
      }
      json out = {{"set", to_json(spec)}, {"coloring", chi.provenance()}, {"result", to_json(res)}};
      int code = kOk;
      if (max_k) {
        const bool held = res.length <= *max_k;
        out["assertion"] = {{"max_k", *max_k}, {"holds", held}};
        if (!held) code = kAssertFailed;
      }
      emit(out);
      return code;
    };
  });

  // delta
  int delta_k = 3;
  int delta_r = 2;
  std::size_t budget = 100;
  unsigned threads = default_threads();
  std::string witness_path;
  bool no_symmetry = false;
  auto* delta_cmd = app.add_subcommand("delta", "Exact Delta(D, k; r) by backtracking");
  delta_cmd->add_option("--set", set_arg, "Gap set")->required();
  delta_cmd->add_option("-k", delta_k, "Chain length k");
  delta_cmd->add_option("-r", delta_r, "Number of colors");
  delta_cmd->add_option("--budget", budget, "Largest n searched");
  delta_cmd->add_option("--threads", threads, "Worker threads (default: RAMSEY_THREADS or 1)");
  delta_cmd->add_option("--emit-witness", witness_path, "Write the avoider coloring as run-length JSON");
  delta_cmd->add_flag("--no-symmetry-breaking", no_symmetry, "Search all colorings, not canonical ones");
  delta_cmd->callback([&] {
    run.action = [&] {
      const GapSetSpec spec = parse_set(set_arg);
      const auto view = enumerate(spec, std::uint64_t{std::max<std::size_t>(budget, 1)});
      DeltaResult res = delta(view, delta_k, delta_r, budget, {std::max(1U, threads), !no_symmetry});
      res.set = to_json(spec);
      if (!witness_path.empty()) emit(to_rle_json(res.witness), witness_path);
      json out = to_json(res);
      out["threads"] = std::max(1U, threads);
      emit(out);
      return kOk;
    };
  });

  // chromatic
  std::size_t chrom_n = 30;
  std::size_t exact_limit = 60;
  std::optional<std::size_t> min_lower;
  auto* chrom_cmd = app.add_subcommand("chromatic", "Chromatic number bounds of the distance graph on 1..N");
  chrom_cmd->add_option("--set", set_arg, "Gap set")->required();
  chrom_cmd->add_option("-N", chrom_n, "Number of vertices");
  chrom_cmd->add_option("--exact-limit", exact_limit, "Run the exact search when N <= this");
  chrom_cmd->add_option("--min-lower", min_lower, "Assert the lower bound is at least this");
  chrom_cmd->callback([&] {
    run.action = [&] {
      const GapSetSpec spec = parse_set(set_arg);
      const auto view = enumerate(spec, std::uint64_t{std::max<std::size_t>(chrom_n, 1)});
      ChromaticResult res = chromatic_number_prefix(view, chrom_n, exact_limit);
      res.set = to_json(spec);
      json out = to_json(res);
      int code = kOk;
      if (min_lower) {
        const bool held = res.lower >= *min_lower;
        out["assertion"] = {{"min_lower", *min_lower}, {"holds", held}};
        if (!held) code = kAssertFailed;
      }
      emit(out);
      return code;
    };
  });

  // complexity
  std::size_t n_max = 12;
  bool sturmian = false;
  auto* comp_cmd = app.add_subcommand("complexity", "Factor complexity p(n) for n = 1..n-max");
  comp_cmd->add_option("--coloring", color_arg, "Preset or coloring file")->required();
  comp_cmd->add_option("-N", color_n, "Length");
  comp_cmd->add_option("-r", color_r, "Colors for frac:ALPHA");
  comp_cmd->add_option("--n-max", n_max, "Largest factor length");
  comp_cmd->add_flag("--assert-sturmian", sturmian, "Assert p(n) = n + 1 for every n");
  comp_cmd->callback([&] {
    run.action = [&] {
      const Coloring chi = load_coloring(color_arg, color_n, color_r);
      json counts = json::array();
      bool is_sturmian = true;
      for (std::size_t n = 1; n <= n_max; ++n) {
        const std::size_t p = complexity(chi, n);
        counts.push_back(p);
        is_sturmian = is_sturmian && p == n + 1;
      }
      json out = {{"coloring", chi.provenance()}, {"N", chi.size()}, {"complexity", counts}};
      if (sturmian) out["assertion"] = {{"sturmian", is_sturmian}};
      emit(out);
      return sturmian && !is_sturmian ? kAssertFailed : kOk;
    };
  });

  // pipeline
  int pipe_r = 2;
  std::size_t pipe_n = 20000;
  auto* pipe_cmd = app.add_subcommand("pipeline", "growth check, alpha, certified fractional parts, coloring scan");
  pipe_cmd->add_option("--set", set_arg, "Gap set")->required();
  pipe_cmd->add_option("-r", pipe_r, "Number of colors");
  pipe_cmd->add_option("--delta", delta_arg, "Growth slack delta (rational)");
  pipe_cmd->add_option("--steps", steps, "Nested steps");
  pipe_cmd->add_option("-N", pipe_n, "Scan length");
  pipe_cmd->callback([&] {
    run.action = [&] {
      const GapSetSpec spec = parse_set(set_arg);
      const BigRational delta = BigRational::parse(delta_arg);
      const auto big = enumerate_for_steps(spec, pipe_r, delta, steps);
      const AlphaCertificate alpha = build_alpha_for(big, pipe_r, delta, steps);
      const auto covered = covered_prefix(big, alpha);
      Certificate growth = growth_certificate(covered, growth_factor(pipe_r, delta), alpha.offset);
      Certificate fracs = certify_fracs(Q5Number(alpha.alpha), covered, alpha.eps1, pipe_r);
      const auto view = enumerate(spec, std::uint64_t{std::max<std::size_t>(pipe_n, 1)});
      if (!view.empty() && BigInt(view.elements.back()) > covered.bound) {
        throw InputError("scan length " + std::to_string(pipe_n) + " uses gaps beyond the " + std::to_string(steps) +
                         " certified steps; raise --steps");
      }
      Certificate evidence = doa_evidence(view, Q5Number(alpha.alpha), alpha.eps1, pipe_r, pipe_n);

      Certificate out;
      out.claim = "pipeline";
      out.parameters = {{"set", to_json(spec)}, {"r", pipe_r}, {"delta", delta.str()}, {"steps", steps}, {"N", pipe_n},
                        {"eps", alpha.eps.str()}, {"eps1", alpha.eps1.str()}, {"alpha", alpha.alpha.str()},
                        {"offset", alpha.offset}, {"bound", to_json(diffseq_bound_from_eps(pipe_r, alpha.eps1))}};
      out.verified_range = {{"certified_gaps", covered.size()}, {"last_certified_gap", to_json(covered.bound)}};
      out.pass = growth.pass && alpha.all_pass() && fracs.pass && evidence.pass;
      out.components = {growth, fracs, evidence};
      out.note = "finite-range evidence for doa(D) <= r-1";
      json j = to_json(out);
      j["alpha_trace"] = to_json(alpha);
      emit(j);
      return out.pass ? kOk : kAssertFailed;
    };
  });

  // reproduce
  std::string scale = "quick";
  std::vector<std::string> only;
  std::vector<std::string> overrides;
  std::string table_path;
  auto* repro_cmd = app.add_subcommand("reproduce", "Run the registered claim list");
  repro_cmd->add_option("--scale", scale, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  repro_cmd->add_option("--only", only, "Run only these claim ids")->delimiter(',');
  repro_cmd->add_option("--override-alpha", overrides, "NAME=ALPHA, replaces a preset alpha (negative control)");
  repro_cmd->add_option("--threads", threads, "Worker threads for the search claims");
  repro_cmd->add_option("--table", table_path, "Also write the table to this file");
  repro_cmd->callback([&] {
    run.action = [&] {
      ReproOptions opts;
      opts.scale = parse_scale(scale);
      opts.only = only;
      opts.threads = std::max(1U, threads);
      for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw InputError("--override-alpha expects NAME=ALPHA");
        const std::string name = o.substr(0, eq);
        preset_alpha(name);  // rejects unknown names
        opts.alpha_overrides[name] = Q5Number::parse(o.substr(eq + 1));
      }
      const ReproReport report = run_reproduce(opts);
      const std::string table = to_table(report);
      std::cerr << table;
      if (!table_path.empty()) write_text(table_path, table);
      emit(to_json(report));
      return report.pass() ? kOk : kAssertFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    return run.action ? run.action() : kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InternalError& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return kAssertFailed;
  }
}
