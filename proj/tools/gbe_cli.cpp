#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gbe/gbe.h"

using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComputeError : std::runtime_error {
  ComputeError(gbe_status st, const std::string& msg) : std::runtime_error(msg), status(st) {}
  gbe_status status;
};

void check(gbe_status st) {
  if (st != GBE_OK) throw ComputeError(st, gbe_last_error());
}

std::string num(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void dump(const ojson& j, std::string& out) {
  switch (j.type()) {
    case ojson::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += ojson(it.key()).dump();
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case ojson::value_t::array: {
      out += '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      break;
    }
    case ojson::value_t::number_float: out += num(j.get<double>()); break;
    default: out += j.dump();
  }
}

std::string to_text(const ojson& j) {
  std::string s;
  dump(j, s);
  return s + "\n";
}

ojson logc_json(gbe_logc z) {
  ojson o;
  o["log_mag"] = z.log_mag;
  o["phase"] = z.phase;
  if (std::isfinite(z.log_mag) && std::abs(z.log_mag) < 700) {
    o["re"] = std::exp(z.log_mag) * std::cos(z.phase);
    o["im"] = std::exp(z.log_mag) * std::sin(z.phase);
  } else if (!std::isfinite(z.log_mag) && z.log_mag < 0) {
    o["re"] = 0.0;
    o["im"] = 0.0;
  }
  return o;
}

ojson report_json(const gbe_quad_report& r) {
  ojson o;
  o["shift"] = r.shift;
  o["center"] = r.center;
  o["half_width"] = r.half_width;
  o["nodes"] = r.nodes;
  o["change"] = r.change;
  o["lost_digits"] = r.lost_digits;
  o["real_line_chamber"] = r.real_line_chamber != 0;
  return o;
}

// ---- schema helpers ----

class Params {
 public:
  Params(ojson doc, std::string where) : doc_(std::move(doc)), where_(std::move(where)) {
    if (!doc_.is_object()) throw UsageError(where_ + ": config must be a JSON object");
  }

  void allow(std::initializer_list<const char*> keys) {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = doc_.begin(); it != doc_.end(); ++it)
      if (!ok.count(it.key())) throw UsageError(where_ + ": unknown key '" + it.key() + "'");
  }

  bool has(const char* k) const { return doc_.contains(k) && !doc_[k].is_null(); }

  double real(const char* k, std::optional<double> def = {}) const {
    if (!has(k)) return required(k, def);
    if (!doc_[k].is_number()) throw UsageError(where_ + ": '" + k + "' must be a number");
    return doc_[k].get<double>();
  }

  long integer(const char* k, std::optional<long> def = {}) const {
    if (!has(k)) {
      if (!def) throw UsageError(where_ + ": missing required key '" + k + "'");
      return *def;
    }
    const auto& v = doc_[k];
    if (!v.is_number_integer() && !(v.is_number() && v.get<double>() == std::floor(v.get<double>())))
      throw UsageError(where_ + ": '" + k + "' must be an integer");
    return v.get<long>();
  }

  bool boolean(const char* k, bool def) const {
    if (!has(k)) return def;
    if (!doc_[k].is_boolean()) throw UsageError(where_ + ": '" + k + "' must be true or false");
    return doc_[k].get<bool>();
  }

  std::string str(const char* k, std::optional<std::string> def = {}) const {
    if (!has(k)) {
      if (!def) throw UsageError(where_ + ": missing required key '" + k + "'");
      return *def;
    }
    if (!doc_[k].is_string()) throw UsageError(where_ + ": '" + k + "' must be a string");
    return doc_[k].get<std::string>();
  }

  std::vector<double> reals(const char* k, std::optional<std::vector<double>> def = {}) const {
    if (!has(k)) {
      if (!def) throw UsageError(where_ + ": missing required key '" + k + "'");
      return *def;
    }
    const auto& v = doc_[k];
    if (!v.is_array()) throw UsageError(where_ + ": '" + k + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw UsageError(where_ + ": '" + k + "' must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  // Entries are numbers or [re, im] pairs.
  std::vector<gbe_cplx> complexes(const char* k, std::optional<std::vector<gbe_cplx>> def = {}) const {
    if (!has(k)) {
      if (!def) throw UsageError(where_ + ": missing required key '" + k + "'");
      return *def;
    }
    const auto& v = doc_[k];
    const std::string bad = where_ + ": '" + k + "' must be an array of numbers or [re, im] pairs";
    if (!v.is_array()) throw UsageError(bad);
    std::vector<gbe_cplx> out;
    for (const auto& e : v) {
      if (e.is_number())
        out.push_back({e.get<double>(), 0.0});
      else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        out.push_back({e[0].get<double>(), e[1].get<double>()});
      else
        throw UsageError(bad);
    }
    return out;
  }

 private:
  double required(const char* k, std::optional<double> def) const {
    if (!def) throw UsageError(where_ + ": missing required key '" + k + "'");
    return *def;
  }

  ojson doc_;
  std::string where_;
};

ojson cplx_list_json(const std::vector<gbe_cplx>& v) {
  ojson a = ojson::array();
  for (auto z : v) {
    if (z.im == 0.0)
      a.push_back(z.re);
    else
      a.push_back(ojson::array({z.re, z.im}));
  }
  return a;
}

ojson cplx_json(gbe_cplx z) {
  ojson o;
  o["re"] = z.re;
  o["im"] = z.im;
  return o;
}

int as_int(long v, const char* what) {
  if (v < -1000000000L || v > 1000000000L) throw UsageError(std::string(what) + " is out of range");
  return static_cast<int>(v);
}

struct Output {
  std::string text;
};

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::string out;
  int threads = 0;
  bool dry_run = false;
};

ojson load_config(const Common& c) {
  if (c.config.empty()) return ojson::object();
  std::ifstream in(c.config);
  if (!in) throw UsageError("cannot read config file '" + c.config + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  ojson doc = ojson::parse(ss.str(), nullptr, false);
  if (doc.is_discarded()) throw UsageError("config file '" + c.config + "' is not valid JSON");
  return doc;
}

// ---- subcommands ----

std::vector<int> parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw UsageError("partition must be comma-separated integers");
    }
    if (pos != tok.size()) throw UsageError("partition must be comma-separated integers");
    parts.push_back(v);
  }
  return parts;
}

Output run_jack(const Common& c, const ojson& cli) {
  ojson doc = load_config(c);
  for (auto it = cli.begin(); it != cli.end(); ++it) doc[it.key()] = it.value();
  Params p(doc, "jack");
  p.allow({"partition", "alpha", "nvars"});
  std::vector<int> parts;
  for (double v : p.reals("partition")) {
    if (v != std::floor(v)) throw UsageError("jack: partition entries must be integers");
    parts.push_back(static_cast<int>(v));
  }
  const double alpha = p.real("alpha");
  const int nvars = as_int(p.integer("nvars"), "nvars");
  if (c.dry_run) {
    ojson o;
    o["subcommand"] = "jack";
    o["partition"] = parts;
    o["alpha"] = alpha;
    o["nvars"] = nvars;
    return {to_text(o)};
  }
  gbe_jack* j = nullptr;
  check(gbe_jack_new(parts.data(), static_cast<int>(parts.size()), alpha, nvars, &j));
  ojson o;
  std::string csv = "partition,coefficient\n";
  for (size_t i = 0; i < gbe_jack_size(j); ++i) {
    const char* label = nullptr;
    gbe_cplx coef;
    gbe_jack_term(j, i, &label, &coef);
    o[label] = coef.im == 0.0 ? ojson(coef.re) : ojson::array({coef.re, coef.im});
    csv += std::string("\"") + label + "\"," + num(coef.re) + "\n";
  }
  gbe_jack_free(j);
  return {c.format == "csv" ? csv : to_text(o)};
}

Output run_hyper(const Common& c) {
  Params p(load_config(c), "hyper");
  p.allow({"a", "b", "x", "y", "alpha", "max_degree", "rel_tol", "stagnation_window"});
  auto a = p.complexes("a", std::vector<gbe_cplx>{});
  auto b = p.complexes("b", std::vector<gbe_cplx>{});
  auto x = p.complexes("x");
  std::optional<std::vector<gbe_cplx>> y;
  if (p.has("y")) y = p.complexes("y");
  if (y && y->size() != x.size()) throw UsageError("hyper: 'y' must have the length of 'x'");
  gbe_series_ctrl ctrl = gbe_series_ctrl_default();
  ctrl.max_degree = as_int(p.integer("max_degree", ctrl.max_degree), "max_degree");
  ctrl.rel_tol = p.real("rel_tol", ctrl.rel_tol);
  ctrl.stagnation_window = as_int(p.integer("stagnation_window", ctrl.stagnation_window), "stagnation_window");
  const double alpha = p.real("alpha");
  if (c.dry_run) {
    ojson o;
    o["subcommand"] = "hyper";
    o["a"] = cplx_list_json(a);
    o["b"] = cplx_list_json(b);
    o["x"] = cplx_list_json(x);
    if (y) o["y"] = cplx_list_json(*y);
    o["alpha"] = alpha;
    o["max_degree"] = ctrl.max_degree;
    o["rel_tol"] = ctrl.rel_tol;
    o["stagnation_window"] = ctrl.stagnation_window;
    return {to_text(o)};
  }
  gbe_cplx v;
  gbe_series_report rep;
  check(gbe_hyper_pq(a.data(), static_cast<int>(a.size()), b.data(), static_cast<int>(b.size()), x.data(),
                     y ? y->data() : nullptr, static_cast<int>(x.size()), alpha, &ctrl, &v, &rep));
  if (c.format == "csv")
    return {"re,im,degree_reached,tail_estimate,cancellation,converged\n" + num(v.re) + "," + num(v.im) + "," +
            std::to_string(rep.degree_reached) + "," + num(rep.tail_estimate) + "," + num(rep.cancellation) + "," +
            (rep.converged ? "true" : "false") + "\n"};
  ojson o;
  o["value"] = cplx_json(v);
  ojson r;
  r["degree_reached"] = rep.degree_reached;
  r["tail_estimate"] = rep.tail_estimate;
  r["cancellation"] = rep.cancellation;
  r["converged"] = rep.converged != 0;
  o["report"] = r;
  return {to_text(o)};
}

struct EnsembleHandle {
  gbe_ensemble* h = nullptr;
  ~EnsembleHandle() { gbe_ensemble_free(h); }
};

Output run_kernel(const Common& c) {
  Params p(load_config(c), "kernel");
  p.allow({"beta", "N", "n", "source", "s", "shift", "nodes", "half_width", "method", "l", "resolution"});
  const double beta = p.real("beta");
  const int N = as_int(p.integer("N"), "N");
  auto src = p.reals("source", std::vector<double>{});
  auto s = p.complexes("s");
  if (p.has("n") && p.integer("n") != static_cast<long>(s.size())) throw UsageError("kernel: 'n' must equal len(s)");
  const std::string method = p.str("method", std::string("duality"));
  if (method != "duality" && method != "direct") throw UsageError("kernel: method must be duality or direct");
  gbe_contour ct = gbe_contour_default();
  if (p.has("shift")) {
    ct.shift = p.real("shift");
    ct.auto_shift = 0;
  }
  ct.nodes = as_int(p.integer("nodes", 0), "nodes");
  ct.half_width = p.real("half_width", 0.0);
  const int l = as_int(p.integer("l", 0), "l");
  const int resolution = as_int(p.integer("resolution", 0), "resolution");
  if (c.dry_run) {
    ojson o;
    o["subcommand"] = "kernel";
    o["beta"] = beta;
    o["N"] = N;
    o["n"] = s.size();
    o["source"] = src;
    o["s"] = cplx_list_json(s);
    o["method"] = method;
    if (method == "duality") {
      o["shift"] = ct.auto_shift ? ojson("auto") : ojson(ct.shift);
      o["nodes"] = ct.nodes;
      o["half_width"] = ct.half_width;
      o["l"] = l;
    } else {
      o["resolution"] = resolution;
    }
    return {to_text(o)};
  }
  EnsembleHandle e;
  check(gbe_ensemble_new(beta, N, src.data(), static_cast<int>(src.size()), &e.h));
  ojson o;
  if (method == "direct") {
    if (l != 0) throw UsageError("kernel: 'l' applies to the duality method only");
    gbe_cplx v;
    check(gbe_direct_K(e.h, s.data(), static_cast<int>(s.size()), resolution, &v));
    gbe_logc z{std::log(std::hypot(v.re, v.im)), std::atan2(v.im, v.re)};
    o = logc_json(z);
  } else {
    gbe_logc z;
    gbe_quad_report rep;
    if (l == 0)
      check(gbe_K_via_duality(e.h, s.data(), static_cast<int>(s.size()), &ct, &z, &rep));
    else {
      // K_{N-l} through φ: undo the e^{-p_2(s)/2} weight.
      check(gbe_phi(e.h, s.data(), static_cast<int>(s.size()), l, &ct, &z, &rep));
      double lr = 0, ph = 0;
      for (auto t : s) {
        lr += 0.5 * (t.re * t.re - t.im * t.im);
        ph += t.re * t.im;
      }
      z.log_mag += lr;
      z.phase = std::remainder(z.phase + ph, 2 * M_PI);
    }
    o = logc_json(z);
    o["report"] = report_json(rep);
  }
  if (c.format == "csv") {
    std::string out = "log_mag,phase,re,im\n" + num(o["log_mag"].get<double>()) + "," + num(o["phase"].get<double>()) +
                      "," + (o.contains("re") ? num(o["re"].get<double>()) : "") + "," +
                      (o.contains("im") ? num(o["im"].get<double>()) : "") + "\n";
    return {out};
  }
  return {to_text(o)};
}

Output run_sample(const Common& c) {
  Params p(load_config(c), "sample");
  p.allow({"beta", "N", "source", "s", "seed", "chain_length", "burn_in", "proposal_scale", "batches", "chains"});
  gbe_mc_config mc = gbe_mc_config_default();
  const double beta = p.real("beta");
  const int N = as_int(p.integer("N"), "N");
  auto src = p.reals("source", std::vector<double>{});
  auto s = p.complexes("s");
  long seed = p.integer("seed", static_cast<long>(mc.seed));
  if (seed < 0) throw UsageError("sample: seed must be non-negative");
  mc.seed = c.seed ? *c.seed : static_cast<std::uint64_t>(seed);
  mc.chain_length = p.integer("chain_length", mc.chain_length);
  mc.burn_in = p.integer("burn_in", mc.burn_in);
  mc.proposal_scale = p.real("proposal_scale", mc.proposal_scale);
  mc.batches = as_int(p.integer("batches", mc.batches), "batches");
  mc.chains = as_int(p.integer("chains", mc.chains), "chains");
  if (c.dry_run) {
    ojson o;
    o["subcommand"] = "sample";
    o["beta"] = beta;
    o["N"] = N;
    o["source"] = src;
    o["s"] = cplx_list_json(s);
    o["seed"] = mc.seed;
    o["chain_length"] = mc.chain_length;
    o["burn_in"] = mc.burn_in;
    o["proposal_scale"] = mc.proposal_scale;
    o["batches"] = mc.batches;
    o["chains"] = mc.chains;
    return {to_text(o)};
  }
  EnsembleHandle e;
  check(gbe_ensemble_new(beta, N, src.data(), static_cast<int>(src.size()), &e.h));
  gbe_mc_result r;
  check(gbe_mc_estimate_K(e.h, s.data(), static_cast<int>(s.size()), &mc, &r));
  if (c.format == "csv")
    return {"estimate_re,estimate_im,stderr,acceptance_rate\n" + num(r.estimate.re) + "," + num(r.estimate.im) + "," +
            num(r.std_error) + "," + num(r.acceptance_rate) + "\n"};
  ojson o;
  o["estimate_re"] = r.estimate.re;
  o["estimate_im"] = r.estimate.im;
  o["stderr"] = r.std_error;
  o["acceptance_rate"] = r.acceptance_rate;
  o["proposal_scale"] = r.proposal_scale;
  return {to_text(o)};
}

Output run_limit(const Common& c) {
  Params p(load_config(c), "limit");
  p.allow({"fn", "path", "n", "m", "alpha", "s", "f", "delta"});
  const std::string fn = p.str("fn");
  const std::string path = p.str("path", std::string("quad"));
  static const std::map<std::string, gbe_limit_path> paths = {
      {"quad", GBE_PATH_QUAD}, {"det", GBE_PATH_DET}, {"hermite", GBE_PATH_HERMITE}, {"series", GBE_PATH_SERIES}};
  if (fn != "airy" && fn != "gauss") throw UsageError("limit: fn must be airy or gauss");
  if (!paths.count(path)) throw UsageError("limit: path must be quad, det, hermite or series");
  auto s = p.complexes("s");
  auto f = p.complexes("f", std::vector<gbe_cplx>{});
  if (p.has("n") && p.integer("n") != static_cast<long>(s.size())) throw UsageError("limit: 'n' must equal len(s)");
  if (p.has("m") && p.integer("m") != static_cast<long>(f.size())) throw UsageError("limit: 'm' must equal len(f)");
  const double alpha = p.real("alpha", 1.0);
  const double delta = p.real("delta", 0.0);
  if (c.dry_run) {
    ojson o;
    o["subcommand"] = "limit";
    o["fn"] = fn;
    o["path"] = path;
    o["n"] = s.size();
    o["m"] = f.size();
    o["alpha"] = alpha;
    o["s"] = cplx_list_json(s);
    o["f"] = cplx_list_json(f);
    o["delta"] = delta == 0.0 ? ojson("auto") : ojson(delta);
    return {to_text(o)};
  }
  gbe_cplx v;
  gbe_quad_report rep{};
  check(gbe_limit(fn == "airy" ? GBE_LIMIT_AIRY : GBE_LIMIT_GAUSS, paths.at(path), s.data(),
                  static_cast<int>(s.size()), f.data(), static_cast<int>(f.size()), alpha, delta, &v, &rep));
  if (c.format == "csv") return {"re,im,path\n" + num(v.re) + "," + num(v.im) + "," + path + "\n"};
  ojson o;
  o["re"] = v.re;
  o["im"] = v.im;
  o["path"] = path;
  if (path == "quad") o["report"] = report_json(rep);
  return {to_text(o)};
}

struct StudyHandle {
  gbe_study* h = nullptr;
  ~StudyHandle() { gbe_study_free(h); }
};

std::vector<double> study_list(gbe_study* h, const char* key) {
  int len = 0;
  check(gbe_study_get_list(h, key, nullptr, 0, &len));
  std::vector<double> v(len);
  check(gbe_study_get_list(h, key, v.data(), len, &len));
  return v;
}

Output run_verify(const Common& c, const std::string& theorem) {
  static const std::set<std::string> theorems = {"sub", "crit", "sup", "bulk", "rank"};
  if (!theorems.count(theorem)) throw UsageError("verify: --theorem must be sub, crit, sup, bulk or rank");
  Params p(load_config(c), "verify");
  p.allow({"regime", "beta", "n", "m", "mu", "u", "sbar", "pibar", "pi_fixed", "sbar_prime", "N_list", "hat",
           "rank_exponent", "rank_scale"});
  StudyHandle st;
  check(gbe_study_new(theorem.c_str(), &st.h));
  if (p.has("regime")) check(gbe_study_set_regime(st.h, p.str("regime").c_str()));
  for (const char* k : {"beta", "mu", "u", "rank_exponent", "rank_scale"})
    if (p.has(k)) check(gbe_study_set_real(st.h, k, p.real(k)));
  for (const char* k : {"n", "m"})
    if (p.has(k)) check(gbe_study_set_int(st.h, k, as_int(p.integer(k), k)));
  if (p.has("hat")) check(gbe_study_set_int(st.h, "hat", p.boolean("hat", false) ? 1 : 0));
  for (const char* k : {"sbar", "pibar", "pi_fixed", "sbar_prime", "N_list"})
    if (p.has(k)) {
      auto v = p.reals(k);
      check(gbe_study_set_list(st.h, k, v.data(), static_cast<int>(v.size())));
    }
  gbe_status vs = gbe_study_validate(st.h);
  if (vs != GBE_OK) throw UsageError(std::string("verify: ") + gbe_last_error());

  if (c.dry_run) {
    ojson o;
    o["subcommand"] = "verify";
    o["theorem"] = theorem;
    const char* regime = nullptr;
    check(gbe_study_get_regime(st.h, &regime));
    o["regime"] = regime;
    double x;
    int k;
    check(gbe_study_get_real(st.h, "beta", &x));
    o["beta"] = x;
    check(gbe_study_get_int(st.h, "n", &k));
    o["n"] = k;
    check(gbe_study_get_int(st.h, "m", &k));
    o["m"] = k;
    check(gbe_study_get_int(st.h, "r", &k));
    o["r"] = k;
    check(gbe_study_get_real(st.h, "mu", &x));
    o["mu"] = x;
    if (std::string(regime) == "supercritical") {
      check(gbe_study_get_real(st.h, "nu", &x));
      o["nu"] = x;
      check(gbe_study_get_real(st.h, "sigma", &x));
      o["sigma"] = x;
      check(gbe_study_get_int(st.h, "hat", &k));
      o["hat"] = k != 0;
    }
    if (std::string(regime) == "bulk") {
      check(gbe_study_get_real(st.h, "u", &x));
      o["u"] = x;
    }
    for (const char* key : {"sbar", "pibar", "pi_fixed"}) o[key] = study_list(st.h, key);
    std::vector<int> ns;
    for (double v : study_list(st.h, "N_list")) ns.push_back(static_cast<int>(v));
    o["N_list"] = ns;
    if (theorem == "rank") {
      check(gbe_study_get_real(st.h, "rank_exponent", &x));
      o["rank_exponent"] = x;
      check(gbe_study_get_real(st.h, "rank_scale", &x));
      o["rank_scale"] = x;
    }
    return {to_text(o)};
  }

  gbe_table* t = nullptr;
  check(gbe_study_run(st.h, &t));
  Output out;
  if (c.format == "json") {
    ojson rows = ojson::array();
    for (size_t i = 0; i < gbe_table_rows(t); ++i) {
      gbe_study_row r;
      gbe_table_row(t, i, &r);
      ojson o;
      o["N"] = r.N;
      o["r"] = r.r;
      o["lhs"] = logc_json(r.lhs);
      o["rhs"] = logc_json(r.rhs);
      o["rel_dev"] = r.rel_dev;
      if (theorem == "bulk" || theorem == "rank") o["rel_dev_sign_flipped"] = r.rel_dev_flipped;
      o["quad_change"] = r.quad_change;
      rows.push_back(o);
    }
    ojson o;
    o["theorem"] = theorem;
    o["rows"] = rows;
    out.text = to_text(o);
  } else {
    out.text = gbe_table_csv(t);
  }
  gbe_table_free(t);
  return out;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ComputeError(GBE_ERR_INTERNAL, "cannot write '" + c.out + "'");
  f << text;
}

int error_record(const std::string& kind, const std::string& message, int code) {
  ojson o;
  o["error"]["kind"] = kind;
  o["error"]["message"] = message;
  o["error"]["exit_code"] = code;
  std::string s = to_text(o);
  std::fwrite(s.data(), 1, s.size(), stderr);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian beta-ensemble characteristic polynomial toolkit"};
  app.require_subcommand(1);
  Common common;
  std::string seed_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "JSON parameter file");
    sub->add_option("--seed", seed_text, "unsigned 64-bit seed");
    sub->add_option("--format", common.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", common.out, "output path (default stdout)");
    sub->add_option("--threads", common.threads, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
    sub->add_flag("--dry-run", common.dry_run, "print the resolved parameters and stop");
  };

  auto* jack = app.add_subcommand("jack", "Jack polynomial in the monomial basis");
  std::string partition;
  std::optional<double> jack_alpha;
  std::optional<int> jack_nvars;
  jack->add_option("--partition", partition, "comma-separated parts");
  jack->add_option("--alpha", jack_alpha, "Jack parameter");
  jack->add_option("--nvars", jack_nvars, "number of variables");
  add_common(jack);

  auto* hyper = app.add_subcommand("hyper", "hypergeometric function of matrix argument");
  add_common(hyper);
  auto* kernel = app.add_subcommand("kernel", "characteristic polynomial correlation K");
  add_common(kernel);
  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate of K");
  add_common(sample);
  auto* limit = app.add_subcommand("limit", "multivariate Airy and Gaussian limit functions");
  add_common(limit);
  auto* verify = app.add_subcommand("verify", "convergence study against a limit theorem");
  std::string theorem;
  verify->add_option("--theorem", theorem, "sub, crit, sup, bulk or rank")->required();
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_record("usage", e.what(), 2);
  }

  try {
    if (!seed_text.empty()) {
      size_t pos = 0;
      if (seed_text[0] == '-') throw UsageError("--seed must be an unsigned integer");
      unsigned long long v = 0;
      try {
        v = std::stoull(seed_text, &pos);
      } catch (const std::exception&) {
        throw UsageError("--seed must be an unsigned integer");
      }
      if (pos != seed_text.size()) throw UsageError("--seed must be an unsigned integer");
      common.seed = v;
    }
    if (common.format.empty()) common.format = verify->parsed() ? "csv" : "json";
    check(gbe_set_threads(common.threads));
    Output out;
    if (jack->parsed()) {
      ojson cli = ojson::object();
      if (!partition.empty()) cli["partition"] = parse_partition(partition);
      if (jack_alpha) cli["alpha"] = *jack_alpha;
      if (jack_nvars) cli["nvars"] = *jack_nvars;
      out = run_jack(common, cli);
    } else if (hyper->parsed()) {
      out = run_hyper(common);
    } else if (kernel->parsed()) {
      out = run_kernel(common);
    } else if (sample->parsed()) {
      out = run_sample(common);
    } else if (limit->parsed()) {
      out = run_limit(common);
    } else {
      out = run_verify(common, theorem);
    }
    emit(common, out.text);
  } catch (const UsageError& e) {
    return error_record("usage", e.what(), 2);
  } catch (const ComputeError& e) {
    return error_record(gbe_status_name(e.status), e.what(), 1);
  } catch (const std::exception& e) {
    return error_record("internal", e.what(), 1);
  }
  return 0;
}
