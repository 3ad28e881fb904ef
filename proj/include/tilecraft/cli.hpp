#pragma once

// Command-line front end. run() is the whole program; tools/tilecraft.cpp
// only forwards argv.
//
// Exit codes
//   decide        0 NonEmptyPeriodic, 1 Empty, 2 Undecided
//   complexity    0 low complexity, 1 not
//   annihilator   0 verified annihilator found, 1 none found
//   determinism   0 every direction deterministic one way or both,
//                 1 some direction non-deterministic, 2 some probe inconclusive
//   balanced      0 balanced set found, 1 not balanced / none found
//   any command   3 malformed JSON, 4 schema violation, 5 bad arguments or
//                 other error

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "tilecraft/algebra.hpp"
#include "tilecraft/balanced.hpp"
#include "tilecraft/json_io.hpp"
#include "tilecraft/poly_text.hpp"
#include "tilecraft/sft.hpp"

namespace tilecraft::cli {

using json = nlohmann::json;

enum ExitCode : int {
  kPositive = 0,
  kNegative = 1,
  kUndecided = 2,
  kParseError = 3,
  kSchemaError = 4,
  kOtherError = 5,
};

constexpr std::uint64_t kDefaultBudget = 10'000'000;

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::InvalidArgument, "sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

namespace detail {

struct ParseFailure {
  std::string message;
};

struct Input {
  std::string path;
  std::string bytes;
  json doc;
};

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Input read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  Input r{path, ss.str(), {}};
  try {
    r.doc = json::parse(r.bytes);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(r.bytes, e.byte);
    throw ParseFailure{path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what()};
  }
  return r;
}

// Option values are user arguments, not file content: report them as such.
template <class F>
auto option(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidArgument, "--" + name + ": " + e.what());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "--" + name + ": " + e.what());
  }
}

inline DiscreteDomain parse_shape(const std::string& name, const std::string& text) {
  return option(name, [&] {
    const auto j = !text.empty() && text.front() == '[' ? json::parse(text) : json(text);
    return io::shape_from_json(j, name);
  });
}

inline Vec2 parse_vec(const std::string& name, const std::string& text) {
  return option(name, [&] {
    long long x = 0, y = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lld , %lld %c", &x, &y, &tail) != 2)
      throw Error(ErrorCode::InvalidArgument, "expected \"x,y\", got \"" + text + "\"");
    return Vec2{x, y};
  });
}

inline Rect parse_rect(const std::string& name, const std::string& text) {
  return option(name, [&] {
    long long x = 0, y = 0, w = 0, h = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lld %lld %lld %lld %c", &x, &y, &w, &h, &tail) != 4 || w < 1 || h < 1)
      throw Error(ErrorCode::InvalidArgument, "expected \"x y width height\", got \"" + text + "\"");
    return Rect{{x, y}, w, h};
  });
}

inline std::uint64_t default_budget() {
  const char* env = std::getenv("TILECRAFT_BUDGET");
  if (!env || !*env) return kDefaultBudget;
  char* end = nullptr;
  errno = 0;
  const auto v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || *env == '-')
    throw Error(ErrorCode::InvalidArgument, std::string("TILECRAFT_BUDGET is not a node count: ") + env);
  return v;
}

inline json rect_json(const Rect& r) { return json::array({r.origin.x, r.origin.y, r.width, r.height}); }

// All patterns of a periodic configuration occur with a corner in the block.
inline Rect default_window(const Configuration& c, const DiscreteDomain& shape) {
  if (auto w = c.window()) return w->rect();
  const Rect b = shape.bounds();
  const Rect blk = c.periodic()->block_rect();
  return {b.origin, blk.width + b.width - 1, blk.height + b.height - 1};
}

// Every n with n - support inside r.
inline DiscreteDomain convolution_window(const Rect& r, const DiscreteDomain& support) {
  const Rect s = support.bounds();
  const Rect range{r.origin + s.origin, r.width + s.width, r.height + s.height};
  return DiscreteDomain::filter(range, [&](Vec2 n) {
    return std::all_of(support.begin(), support.end(), [&](Vec2 t) { return r.contains(n - t); });
  });
}

struct Options {
  std::string input;
  bool ascii = false;
  bool parallel = false;
  std::uint64_t budget = 0;
  bool budget_given = false;
  std::string shape, window, support, u;
  std::vector<std::string> dirs;
  Coord k = 2, radius = 4, n = 0, m = 0;
  std::size_t area = 6;
};

struct Result {
  int code = kOtherError;
  json outcome;
  std::string text;  // --ascii rendering
};

inline Result run_decide(const Input& in, const Options& o) {
  const auto P = io::pattern_set_from_json(in.doc);
  const auto out = decide(P, o.budget, {o.parallel, 0});
  Result r;
  r.outcome = io::to_json(out);
  std::ostringstream t;
  t << to_string(out.kind);
  switch (out.kind) {
    case DecisionOutcome::Kind::NonEmptyPeriodic:
      r.code = kPositive;
      t << ": " << out.witness->p << "x" << out.witness->q << " torus\n"
        << io::render_ascii(out.witness->values, out.witness->p, P.alphabet());
      break;
    case DecisionOutcome::Kind::Empty:
      r.code = kNegative;
      t << ": no valid " << out.empty_n << "x" << out.empty_n << " square\n";
      break;
    case DecisionOutcome::Kind::Undecided:
      r.code = kUndecided;
      t << " after " << out.nodes_used << " of " << out.budget << " nodes (squares up to " << out.max_n_tried
        << ", tori up to " << out.max_pq_tried << ")\n";
      if (!out.low_complexity) t << "note: " << r.outcome["note"].get<std::string>() << "\n";
      break;
  }
  r.text = t.str();
  return r;
}

inline Result run_complexity(const Input& in, const Options& o) {
  const auto c = io::configuration_from_json(in.doc);
  const auto D = parse_shape("shape", o.shape);
  const Rect w = o.window.empty() ? default_window(c, D) : parse_rect("window", o.window);
  const auto rep = is_low_complexity(c, D, DiscreteDomain::from_rect(w));
  Result r;
  r.code = rep.low_complexity ? kPositive : kNegative;
  r.outcome = {{"shape", io::shape_to_json(D)},
               {"window", rect_json(w)},
               {"count", rep.count},
               {"bound", rep.bound},
               {"low_complexity", rep.low_complexity}};
  r.text = "patterns " + std::to_string(rep.count) + ", |D| " + std::to_string(rep.bound) +
           (rep.low_complexity ? ", low complexity\n" : ", not low complexity\n");
  return r;
}

inline Result run_annihilator(const Input& in, const Options& o) {
  const auto c = io::configuration_from_json(in.doc);
  Result r;
  auto report = [&](const AnnihilatorCertificate& cert) {
    r.outcome["polynomial"] = to_string(cert.poly);
    if (!cert.factors.empty()) r.outcome["factored"] = to_string_factored(cert.factors);
    r.outcome["terms"] = io::to_json(cert.poly)["terms"];
    r.outcome["verified"] = cert.verified;
    r.outcome["window"] = rect_json(cert.window.bounds());
    r.outcome["window_cells"] = cert.window.size();
    r.text = (cert.factors.empty() ? "" : to_string_factored(cert.factors) + " = ") + to_string(cert.poly) +
             (cert.verified ? "\nverified\n" : "\nnot verified\n");
    r.code = cert.verified ? kPositive : kNegative;
  };

  if (o.support.empty() && c.is_periodic()) {
    r.outcome["method"] = "periods";
    report(periodic_annihilator(*c.periodic()));
    return r;
  }
  const auto S = parse_shape("support", o.support.empty() ? std::string("rect 2 2") : o.support);
  DiscreteDomain W;
  if (!o.window.empty()) {
    W = DiscreteDomain::from_rect(parse_rect("window", o.window));
  } else if (auto w = c.window()) {
    W = convolution_window(w->rect(), S);
  } else {
    W = DiscreteDomain::from_rect(c.periodic()->block_rect());
  }
  if (W.empty()) throw Error(ErrorCode::EmptyWindow, "window too small for the support");
  const auto res = annihilator_search(c, W, S);
  r.outcome["method"] = "nullspace";
  r.outcome["support"] = io::shape_to_json(S);
  r.outcome["nullity"] = res.nullity;
  r.outcome["zero_series"] = res.zero_series;
  if (res.found()) {
    report(*res.certificate);
    if (res.zero_series) r.text += "warning: configuration is zero on the window\n";
  } else {
    r.code = kNegative;
    r.outcome["window"] = rect_json(W.bounds());
    r.outcome["window_cells"] = W.size();
    r.text = "NotFound\n";
  }
  r.outcome["found"] = res.found();
  return r;
}

inline Result run_determinism(const Input& in, const Options& o) {
  const auto P = io::pattern_set_from_json(in.doc);
  std::vector<Vec2> dirs;
  for (const auto& d : o.dirs) dirs.push_back(parse_vec("dir", d));
  if (dirs.empty()) throw Error(ErrorCode::InvalidArgument, "at least one --dir is required");
  const auto reps = classify_directions(P, dirs, o.k, o.radius, o.budget);
  Result r;
  r.code = kPositive;
  r.outcome = json::array();
  std::ostringstream t;
  for (const auto& d : reps) {
    r.outcome.push_back({{"u", io::to_json(d.u)},
                         {"label", std::string(to_string(d.label))},
                         {"forward", io::to_json(d.forward)},
                         {"backward", io::to_json(d.backward)}});
    t << d.u.str() << ": " << to_string(d.label) << "\n";
    if (d.label == DirectionClass::Inconclusive) r.code = kUndecided;
    else if (d.label == DirectionClass::NonDeterministic && r.code == kPositive) r.code = kNegative;
  }
  r.text = t.str();
  return r;
}

inline Result run_balanced(const Input& in, const Options& o) {
  const auto c = io::configuration_from_json(in.doc);
  const Vec2 u = parse_vec("u", o.u);
  Result r;
  if (!o.shape.empty()) {
    const auto D = parse_shape("shape", o.shape);
    const Rect w = o.window.empty() ? default_window(c, D) : parse_rect("window", o.window);
    const auto rep = is_balanced(c, D, u, DiscreteDomain::from_rect(w));
    r.code = rep.balanced ? kPositive : kNegative;
    r.outcome = io::to_json(rep);
    r.outcome["window"] = rect_json(w);
    r.text = std::string(rep.balanced ? "balanced" : "not balanced") + " (" + std::to_string(rep.patterns) + ", " +
             std::to_string(rep.inner_patterns) + ", " + std::to_string(rep.edge_size) + ")\n";
    return r;
  }
  if (o.n < 1 || o.m < 1) throw Error(ErrorCode::InvalidArgument, "give --shape, or --n and --m");
  const Rect w = o.window.empty() ? default_window(c, DiscreteDomain::rect(o.n * o.m, o.n * o.m))
                                  : parse_rect("window", o.window);
  const auto res = balanced_search(c, o.n, o.m, u, DiscreteDomain::from_rect(w), o.area);
  r.outcome = {{"found", res.found()},
               {"window", rect_json(w)},
               {"shapes_tried", res.shapes_tried},
               {"rectangle_complexity", {{"count", res.rectangle_complexity.count}, {"bound", res.rectangle_complexity.bound}}},
               {"low_complexity_warning", res.low_complexity_warning}};
  if (res.found()) {
    r.outcome["orientation"] = io::to_json(*res.orientation);
    r.outcome["report"] = io::to_json(*res.report);
  }
  r.code = res.found() ? kPositive : kNegative;
  r.text = res.found() ? "balanced for " + res.orientation->str() + ": " + io::to_json(*res.shape).dump() + "\n"
                       : "NotFound after " + std::to_string(res.shapes_tried) + " shapes\n";
  if (res.low_complexity_warning) r.text += "warning: not low complexity for the rectangle on this window\n";
  return r;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision and analysis tools for two-dimensional subshifts of finite type", "tilecraft"};
  app.require_subcommand(1);
  detail::Options o;

  auto add_common = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", o.input, what)->required();
    sub->add_flag("--ascii", o.ascii, "human-readable output instead of JSON");
    sub->add_flag_function("--json", [&o](std::int64_t) { o.ascii = false; }, "JSON report (default)");
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", o.budget, "search node budget (default: TILECRAFT_BUDGET or 10000000)")
        ->each([&o](const std::string&) { o.budget_given = true; });
  };

  auto* dec = app.add_subcommand("decide", "decide emptiness of the SFT given by a pattern set");
  add_common(dec, "pattern set JSON");
  add_budget(dec);
  dec->add_flag("--parallel", o.parallel, "run the searches of a stage concurrently");

  auto* cpx = app.add_subcommand("complexity", "count the shape patterns of a configuration");
  add_common(cpx, "configuration JSON");
  cpx->add_option("--shape", o.shape, "\"rect n m\" or [[x,y],...]")->required();
  cpx->add_option("--window", o.window, "\"x y width height\"");

  auto* ann = app.add_subcommand("annihilator", "find an annihilating polynomial");
  add_common(ann, "configuration JSON");
  ann->add_option("--support", o.support, "support of the unknown polynomial, \"rect n m\" or [[x,y],...]");
  ann->add_option("--window", o.window, "cells n where fc(n) = 0 is imposed, \"x y width height\"");

  auto* det = app.add_subcommand("determinism", "probe determinism directions of a pattern set");
  add_common(det, "pattern set JSON");
  add_budget(det);
  det->add_option("--dir", o.dirs, "direction \"ux,uy\" (repeatable)")->required();
  det->add_option("--k", o.k, "box size")->check(CLI::PositiveNumber);
  det->add_option("--R", o.radius, "consistency radius")->check(CLI::PositiveNumber);

  auto* bal = app.add_subcommand("balanced", "check or search u-balanced convex sets");
  add_common(bal, "configuration JSON");
  bal->add_option("--u", o.u, "direction \"ux,uy\"")->required();
  bal->add_option("--shape", o.shape, "convex shape to check");
  bal->add_option("--n", o.n, "rectangle width for the search");
  bal->add_option("--m", o.m, "rectangle height for the search");
  bal->add_option("--area", o.area, "largest shape area searched");
  bal->add_option("--window", o.window, "\"x y width height\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kOtherError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (!o.budget_given) o.budget = detail::default_budget();
    const auto in = detail::read_input(o.input);
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    detail::Result r;
    if (name == "decide") r = detail::run_decide(in, o);
    else if (name == "complexity") r = detail::run_complexity(in, o);
    else if (name == "annihilator") r = detail::run_annihilator(in, o);
    else if (name == "determinism") r = detail::run_determinism(in, o);
    else r = detail::run_balanced(in, o);

    if (o.ascii) {
      out << r.text;
      return r.code;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    json args = json::array();
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    json report = {{"command", name},
                   {"args", args},
                   {"input_digest", "sha256:" + sha256_hex(in.bytes)},
                   {"exit_code", r.code},
                   {"outcome", r.outcome},
                   {"wall_time_ms", ms.count()}};
    if (name == "decide" || name == "determinism") report["budget"] = o.budget;
    out << report.dump(2) << "\n";
    return r.code;
  } catch (const detail::ParseFailure& e) {
    err << "error: " << e.message << "\n";
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Schema ? kSchemaError : kOtherError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kOtherError;
  }
}

}  // namespace tilecraft::cli
