#include "phasedet/cli.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "phasedet/bounds.hpp"
#include "phasedet/errors.hpp"
#include "phasedet/simulate.hpp"

namespace phasedet {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  os << v;
  return os.str();
}

const char* status_word(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    default:
      return "UNVERIFIED";
  }
}

using Table = std::vector<std::pair<std::string, std::string>>;

void emit_table(const Table& rows, const std::string& format, std::ostream& out) {
  if (format == "json") {
    Json j = Json::object();
    for (const auto& [k, v] : rows) {
      const Json num = Json::parse(v, nullptr, false);
      j[k] = num.is_number() ? num : Json(v);
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "param,value\n";
  for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
}

std::string fraction(std::uint64_t a, std::uint64_t b) { return std::to_string(a) + "/" + std::to_string(b); }

CheckLine counted(const std::string& name, std::uint64_t good, std::uint64_t total) {
  return {name, good == total ? CheckStatus::Pass : CheckStatus::Fail, fraction(good, total)};
}

CheckLine too_big(const std::string& name, const std::string& why) {
  return {name, CheckStatus::Unverified, "unverified at this scale: " + why};
}

void check_min_distance(VerifyReport& rep, const Json& file, const SchemeBundle* rebuilt, std::uint64_t budget) {
  const CyclicSequence seq = sequence_from_json(file);
  const auto k = file.at("k").get<std::uint64_t>();
  const std::uint64_t n = seq.size();
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  if (pairs > 64.0 * static_cast<double>(budget)) {
    rep.lines.push_back(too_big("min_distance", std::to_string(n) + " phases"));
    return;
  }
  validate_window_length(k, n);
  const int d = scheme_min_distance_until(seq, k, -1);
  CheckLine line{"min_distance=" + std::to_string(d), d >= 1 ? CheckStatus::Pass : CheckStatus::Fail, ""};
  if (d < 1) line.detail = "two phases share a window";
  if (rebuilt && d >= 1) {
    const int want = scheme_min_distance(rebuilt->p2p);
    if (want != d) {
      line.status = CheckStatus::Fail;
      line.detail = "construction gives " + std::to_string(want);
    }
    const Json& c = file.at("construction");
    if (c.value("kind", "") == "lll" && d <= c.at("d").get<int>()) {
      line.status = CheckStatus::Fail;
      line.detail = "not above the target " + std::to_string(c.at("d").get<int>());
    }
  }
  rep.lines.push_back(line);
}

void check_debruijn(VerifyReport& rep, const Json& file, std::uint64_t budget) {
  const CyclicSequence seq = sequence_from_json(file);
  const int r = file.at("construction").at("order").get<int>();
  std::uint64_t total = 0;
  try {
    total = checked_power(seq.alphabet(), r, budget);
  } catch (const ResourceError& e) {
    rep.lines.push_back(too_big("debruijn_property", e.what()));
    return;
  }
  std::vector<std::uint32_t> seen(total, 0);
  Word w(static_cast<std::size_t>(r));
  bool ok = seq.size() == total;
  for (Phase m = 1; ok && m <= seq.size(); ++m) {
    seq.window_into(m, static_cast<std::uint64_t>(r), w.data());
    if (++seen[window_rank(w, seq.alphabet())] > 1) ok = false;
  }
  rep.lines.push_back({"debruijn_property", ok ? CheckStatus::Pass : CheckStatus::Fail,
                       ok ? "each of " + std::to_string(total) + " windows once" : "a window repeats or is missing"});
  const auto idx = debruijn_generate(seq.alphabet(), r, budget).index;
  std::uint64_t good = 0;
  for (Phase m = 1; m <= seq.size(); ++m) {
    seq.window_into(m, static_cast<std::uint64_t>(r), w.data());
    if (idx->decode(w) == std::optional<Phase>(m)) ++good;
  }
  rep.lines.push_back(counted("decode", good, seq.size()));
}

}  // namespace

std::string CheckLine::text() const {
  std::string s = name + " " + status_word(status);
  if (!detail.empty()) s += " (" + detail + ")";
  return s;
}

int VerifyReport::exit_code() const {
  bool unverified = false;
  for (const auto& l : lines) {
    if (l.status == CheckStatus::Fail) return 1;
    if (l.status == CheckStatus::Unverified) unverified = true;
  }
  return unverified ? 2 : 0;
}

VerifyReport verify_scheme(const Json& file, std::uint64_t budget) {
  VerifyReport rep;
  std::optional<SchemeBundle> rebuilt;
  try {
    rebuilt = rebuild_bundle(file);
    const auto cmp = compare_with_rebuild(file, *rebuilt);
    rep.lines.push_back({"construction", cmp.matches ? CheckStatus::Pass : CheckStatus::Fail, cmp.detail});
  } catch (const ResourceError& e) {
    rep.lines.push_back(too_big("construction", e.what()));
  } catch (const std::exception& e) {
    rep.lines.push_back({"construction", CheckStatus::Fail, e.what()});
  }
  const std::string kind = file.at("construction").value("kind", "");
  const SchemeBundle* b = rebuilt ? &*rebuilt : nullptr;

  if (kind == "lfsr" || kind == "lll" || kind == "debruijn") {
    check_min_distance(rep, file, b, budget);
    if (kind == "debruijn" && b) check_debruijn(rep, file, budget);
  } else if (kind == "concat" && b) {
    const CyclicSequence seq = sequence_from_json(file);
    const std::uint64_t k = b->p2p.k;
    if (seq.size() > budget) {
      rep.lines.push_back(too_big("noiseless_detection", std::to_string(seq.size()) + " phases"));
    } else {
      const ConcatDetector det(b->concat, Dmc::noiseless(2));
      std::uint64_t good = 0;
      for (Phase m = 1; m <= seq.size(); ++m)
        if (det.detect(seq.window(m, k)) == DetectionResult(m)) ++good;
      rep.lines.push_back(counted("noiseless_detection", good, seq.size()));
    }
  } else if (kind == "zero-error" && b) {
    const auto& zs = *b->zero_error;
    const std::uint64_t bad = zs.sync_confusable_positions();
    rep.lines.push_back({"sync_never_confusable", bad == 0 ? CheckStatus::Pass : CheckStatus::Fail,
                         std::to_string(bad) + " confusable positions"});
    std::uint64_t good = 0;
    for (Phase m = 1; m <= zs.scheme().n(); ++m) {
      const auto o = zs.detect_all_outputs(m);
      if (o.determinate && o.phase == DetectionResult(m)) ++good;
    }
    rep.lines.push_back(counted("zero_error", good, zs.scheme().n()));
  } else if (kind == "mac-mod2" && b) {
    const CyclicSequence s1 = sequence_from_json(file.at("seq1"));
    const CyclicSequence s2 = sequence_from_json(file.at("seq2"));
    const std::uint64_t k = file.at("k").get<std::uint64_t>();
    try {
      const auto u = unique_sum_report({s1, s2}, k, budget);
      rep.lines.push_back({"unique_sum", u.unique() ? CheckStatus::Pass : CheckStatus::Fail, fraction(u.distinct, u.total)});
      const SyndromeDetector det(b->mac, b->poly1);
      std::uint64_t good = 0;
      Word y(k);
      for (Phase m1 = 1; m1 <= s1.size(); ++m1) {
        for (Phase m2 = 1; m2 <= s2.size(); ++m2) {
          for (std::uint64_t i = 0; i < k; ++i) y[i] = s1.at(m1 + i) ^ s2.at(m2 + i);
          if (det.detect(y) == MacDetection(PhasePair{m1, m2})) ++good;
        }
      }
      rep.lines.push_back(counted("syndrome_detection", good, s1.size() * s2.size()));
    } catch (const ResourceError& e) {
      rep.lines.push_back(too_big("unique_sum", e.what()));
    }
  } else if (kind == "mac-split" && b) {
    const CyclicSequence s1 = sequence_from_json(file.at("seq1"));
    const CyclicSequence s2 = sequence_from_json(file.at("seq2"));
    const std::uint64_t k = file.at("k").get<std::uint64_t>();
    const Mac& mac = b->split->params().mac;
    if (!mac.deterministic()) {
      rep.lines.push_back(too_big("successive_detection", "channel is not deterministic"));
    } else if (s1.size() * s2.size() > budget) {
      rep.lines.push_back(too_big("successive_detection", fraction(s1.size(), s2.size()) + " phase pairs"));
    } else {
      Rng rng(0);
      std::uint64_t good = 0;
      for (Phase m1 = 1; m1 <= s1.size(); ++m1) {
        const Word x1 = s1.window(m1, k);
        for (Phase m2 = 1; m2 <= s2.size(); ++m2) {
          const Word y = mac.transmit(x1, s2.window(m2, k), rng);
          if (b->split->detect(y).phases == MacDetection(PhasePair{m1, m2})) ++good;
        }
      }
      rep.lines.push_back(counted("successive_detection", good, s1.size() * s2.size()));
    }
  }
  return rep;
}

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format;
};

void emit_scheme(const SchemeBundle& b, const Globals& g, std::ostream& out) {
  const Json j = bundle_to_json(b);
  if (b.is_mac()) {
    out << "n1=" << b.mac.seq1.size() << "\nn2=" << b.mac.seq2.size() << "\nk=" << b.mac.k
        << "\nrate1=" << fmt(b.mac.rate1()) << "\nrate2=" << fmt(b.mac.rate2()) << '\n';
    if (b.split) out << "tau_v_increments=" << b.split->tau_v_increments() << '\n';
  } else {
    out << "n=" << b.p2p.n() << "\nk=" << b.p2p.k << "\nrate=" << fmt(b.p2p.rate()) << '\n';
  }
  if (g.out_path.empty()) {
    out << j.dump() << '\n';
  } else {
    write_text_file(g.out_path, j.dump() + "\n");
  }
}

Word read_observation(const std::string& obs, const std::string& obs_file) {
  if (!obs_file.empty()) {
    std::ifstream in(obs_file);
    if (!in) throw DomainError("cannot open " + obs_file);
    return parse_observation(std::string(std::istreambuf_iterator<char>(in), {}));
  }
  if (obs.empty()) throw DomainError("give --obs or --obs-file");
  return parse_observation(obs);
}

std::string phase_text(const DetectionResult& r) { return r ? std::to_string(*r) : std::string("e"); }

struct LayerFlags {
  std::string code = "identity:1";
  int l = 4;
  int tau = 1;
  std::string poly;
  std::uint64_t seed = 0;
};

void add_layer_flags(CLI::App* sub, const std::string& name, LayerFlags& f) {
  sub->add_option("--" + name + "-code", f.code, "block code of the " + name + " layer")->capture_default_str();
  sub->add_option("--" + name + "-l", f.l, "chunks per sync")->capture_default_str();
  sub->add_option("--" + name + "-tau", f.tau, "sync chunk length")->capture_default_str();
  sub->add_option("--" + name + "-poly", f.poly, "m-sequence base polynomial (default: de Bruijn base)");
  sub->add_option("--" + name + "-seed", f.seed, "sync seed")->capture_default_str();
}

ConcatParams layer_params(const LayerFlags& f) {
  ConcatParams p;
  p.code = make_code(f.code);
  p.l = f.l;
  p.tau = f.tau;
  if (!f.poly.empty()) {
    p.base = BaseKind::MSequence;
    p.base_poly = Gf2Poly::parse(f.poly);
  }
  p.seed = f.seed;
  return p;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase detection sequences: generation, verification, detection, simulation and bounds"};
  app.name("phasedet");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--out", g.out_path, "output file");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // gen
  auto* gen = app.add_subcommand("gen", "build a scheme and write its JSON");
  gen->require_subcommand(1);
  std::string poly;
  std::uint64_t k = 0;
  auto* gen_lfsr = gen->add_subcommand("lfsr", "LFSR sequence of a primitive polynomial");
  gen_lfsr->add_option("--poly", poly, "exponent list such as 0,1,2,4,5")->required();
  gen_lfsr->add_option("--k", k, "window length")->required();

  int order = 0;
  int q = 2;
  auto* gen_db = app.get_subcommand("gen")->add_subcommand("debruijn", "de Bruijn sequence");
  gen_db->add_option("--order", order, "order r")->required();
  gen_db->add_option("--q", q, "alphabet size")->capture_default_str();
  gen_db->add_option("--k", k, "window length (default r)");

  int lll_d = 0;
  std::uint64_t lll_n = 0;
  std::uint64_t lll_attempts = 1000;
  auto* gen_lll = gen->add_subcommand("lll", "random sequence with windows pairwise farther than d");
  gen_lll->add_option("--k", k, "window length")->required();
  gen_lll->add_option("--d", lll_d, "distance to exceed")->required();
  gen_lll->add_option("--n", lll_n, "sequence length")->required();
  gen_lll->add_option("--attempts", lll_attempts, "draws before giving up")->capture_default_str();

  LayerFlags concat_flags;
  concat_flags.code = "rep:5";
  concat_flags.l = 8;
  concat_flags.tau = 5;
  std::vector<double> sync_pmf{0.5, 0.5};
  std::string design = "bsc:0.05";
  auto* gen_concat = gen->add_subcommand("concat", "concatenated scheme with sync words");
  gen_concat->add_option("--code", concat_flags.code, "block code")->capture_default_str();
  gen_concat->add_option("--l", concat_flags.l, "chunks per sync")->capture_default_str();
  gen_concat->add_option("--tau", concat_flags.tau, "sync chunk length")->capture_default_str();
  gen_concat->add_option("--poly", concat_flags.poly, "m-sequence base polynomial (default: de Bruijn base)");
  gen_concat->add_option("--sync-pmf", sync_pmf, "sync symbol distribution")->delimiter(',');
  gen_concat->add_option("--channel", design, "channel the detector is tuned for")->capture_default_str();

  std::string ze_code = "pentagon";
  std::string ze_channel = "typewriter:5";
  Symbol ze_beta = 0;
  Symbol ze_gamma = 2;
  int ze_r = 3;
  auto* gen_ze = gen->add_subcommand("zero-error", "zero-error scheme over a confusion graph");
  gen_ze->add_option("--code", ze_code, "zero-error code")->capture_default_str();
  gen_ze->add_option("--channel", ze_channel, "channel")->capture_default_str();
  gen_ze->add_option("--beta", ze_beta, "sync symbol")->capture_default_str();
  gen_ze->add_option("--gamma", ze_gamma, "guard symbol")->capture_default_str();
  gen_ze->add_option("--r", ze_r, "blocks per sync")->capture_default_str();

  std::string poly2;
  auto* gen_mod2 = gen->add_subcommand("mac-mod2", "two LFSR sequences for the mod-2 adder");
  gen_mod2->add_option("--poly1", poly, "first primitive polynomial")->required();
  gen_mod2->add_option("--poly2", poly2, "second primitive polynomial")->required();
  gen_mod2->add_option("--k", k, "window length")->required();

  std::string split_mac = "pair:4x2";
  std::vector<Symbol> split_f{0, 1, 2, 3};
  std::vector<double> pu{0.5, 0.5}, pv{0.5, 0.5}, px2{0.5, 0.5};
  LayerFlags lu{"identity:1", 5, 2, "0,1,4", 0};
  LayerFlags lx2{"identity:1", 4, 1, "", 1};
  LayerFlags lv{"identity:1", 4, 1, "", 2};
  int max_inc = 64;
  auto* gen_split = gen->add_subcommand("mac-split", "rate-splitting MAC scheme");
  gen_split->add_option("--mac", split_mac, "MAC channel")->capture_default_str();
  gen_split->add_option("--f", split_f, "x1 = f(u, v) table indexed 2u + v")->delimiter(',');
  gen_split->add_option("--pu", pu, "u distribution")->delimiter(',');
  gen_split->add_option("--pv", pv, "v distribution")->delimiter(',');
  gen_split->add_option("--px2", px2, "x2 distribution")->delimiter(',');
  gen_split->add_option("--max-tau-increments", max_inc, "tau_v search limit")->capture_default_str();
  add_layer_flags(gen_split, "u", lu);
  add_layer_flags(gen_split, "x2", lx2);
  add_layer_flags(gen_split, "v", lv);

  // verify
  std::string scheme_path;
  std::uint64_t budget = kDefaultExhaustionBudget;
  auto* verify = app.add_subcommand("verify", "check a stored scheme");
  verify->add_option("scheme", scheme_path, "scheme JSON")->required();
  verify->add_option("--budget", budget, "exhaustive-check budget")->capture_default_str();

  // detect
  std::string obs, obs_file, channel_text;
  auto* detect = app.add_subcommand("detect", "estimate the phase of an observed window");
  detect->add_option("scheme", scheme_path, "scheme JSON")->required();
  detect->add_option("--obs", obs, "observation: 0110... or 0,3,4,1");
  detect->add_option("--obs-file", obs_file, "file holding the observation");
  detect->add_option("--channel", channel_text, "channel for likelihood detectors (default: stored)");

  // simulate
  std::uint64_t trials = 1000;
  unsigned workers = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo phase error rate");
  simulate->add_option("scheme", scheme_path, "scheme JSON")->required();
  simulate->add_option("--channel", channel_text, "channel spec")->required();
  simulate->add_option("--trials", trials, "number of trials")->capture_default_str();
  simulate->add_option("--workers", workers, "threads (0: hardware count)")->capture_default_str();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "bound and capacity tables");
  bounds->require_subcommand(1);
  double p = 0.0;
  auto* b_gv = bounds->add_subcommand("gv", "1 - h(2p)");
  b_gv->add_option("--p", p, "adversarial fraction")->required();

  int bk = 0;
  std::optional<int> bd;
  std::optional<double> bp;
  auto* b_lll = bounds->add_subcommand("lll", "largest n guaranteed by the local lemma");
  b_lll->add_option("--k", bk, "window length")->required();
  b_lll->add_option("--d", bd, "distance");
  b_lll->add_option("--p", bp, "fraction; d = floor(2 p k)");

  int tr = 0, tt = 0, tc = 0, tkmax = -1;
  auto* b_thm4 = bounds->add_subcommand("thm4", "smallest k passing the linear-scheme condition");
  b_thm4->add_option("--r", tr, "log n")->required();
  b_thm4->add_option("--t", tt, "t")->required();
  b_thm4->add_option("--c", tc, "c")->required();
  b_thm4->add_option("--kmax", tkmax, "scan limit (default 3r)");

  double rate = 0.0, step = 1e-4, mu = 0.03073;
  auto* b_newub = bounds->add_subcommand("newub", "weight-3 linear-scheme condition scan");
  b_newub->add_option("--p", p, "crossover")->required();
  b_newub->add_option("--R", rate, "rate")->required();
  b_newub->add_option("--step", step, "mu grid step")->capture_default_str();
  b_newub->add_option("--mu", mu, "mu to report on")->capture_default_str();

  auto* b_cap = bounds->add_subcommand("capacity", "DMC capacity");
  b_cap->add_option("--channel", channel_text, "channel spec")->required();

  double r1 = 0.0, r2 = 0.0;
  int resolution = 20;
  auto* b_region = bounds->add_subcommand("mac-region", "product-input MAC region membership");
  b_region->add_option("--mac", channel_text, "MAC spec")->required();
  b_region->add_option("--r1", r1, "rate of user 1")->required();
  b_region->add_option("--r2", r2, "rate of user 2")->required();
  b_region->add_option("--resolution", resolution, "pmf grid resolution")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      SchemeBundle b;
      if (gen_lfsr->parsed()) {
        b.kind = "lfsr";
        b.p2p = build_adversarial(Gf2Poly::parse(poly), k);
      } else if (gen_db->parsed()) {
        b.kind = "debruijn";
        b.p2p = build_debruijn_scheme(q, order, k == 0 ? static_cast<std::uint64_t>(order) : k);
      } else if (gen_lll->parsed()) {
        b.kind = "lll";
        auto res = lll_random_search(k, lll_d, lll_n, lll_attempts, g.seed);
        if (!res.scheme) throw DomainError("no sequence found in " + std::to_string(res.attempts) + " attempts");
        b.p2p = *res.scheme;
      } else if (gen_concat->parsed()) {
        b.kind = "concat";
        ConcatParams cp = layer_params(concat_flags);
        cp.sync_pmf = sync_pmf;
        cp.seed = g.seed;
        parse_channel_spec(design);
        b.concat = std::make_shared<const ConcatScheme>(ConcatScheme::build(cp));
        b.p2p = b.concat->scheme();
        b.design_channel = design;
      } else if (gen_ze->parsed()) {
        b.kind = "zero-error";
        ZeroErrorParams zp;
        zp.code_spec = ze_code;
        zp.channel_spec = ze_channel;
        zp.code = make_zero_error_code(ze_code);
        const auto ch = parse_channel_spec(ze_channel);
        if (!ch.dmc) throw DomainError("zero-error schemes need a point-to-point channel");
        zp.channel = *ch.dmc;
        zp.beta = ze_beta;
        zp.gamma = ze_gamma;
        zp.r = ze_r;
        b.zero_error = std::make_shared<const ZeroErrorScheme>(ZeroErrorScheme::build(zp));
        b.p2p = b.zero_error->scheme();
      } else if (gen_mod2->parsed()) {
        b.kind = "mac-mod2";
        b.poly1 = Gf2Poly::parse(poly);
        b.mac = build_mod2_two_primitives(b.poly1, Gf2Poly::parse(poly2), k);
      } else {
        b.kind = "mac-split";
        RateSplitParams rp;
        rp.mac_spec = split_mac;
        const auto ch = parse_channel_spec(split_mac);
        if (!ch.mac) throw DomainError("rate splitting needs a MAC");
        rp.mac = *ch.mac;
        rp.f = split_f;
        rp.pu = pu;
        rp.pv = pv;
        rp.px2 = px2;
        rp.u = layer_params(lu);
        rp.x2 = layer_params(lx2);
        rp.v = layer_params(lv);
        rp.max_tau_increments = max_inc;
        b.split = std::make_shared<const RateSplitScheme>(RateSplitScheme::build(rp));
        b.mac = b.split->scheme();
      }
      emit_scheme(b, g, out);
      return 0;
    }

    if (verify->parsed()) {
      const auto rep = verify_scheme(read_json_file(scheme_path), budget);
      for (const auto& l : rep.lines) out << l.text() << '\n';
      return rep.exit_code();
    }

    if (detect->parsed()) {
      const Json file = read_json_file(scheme_path);
      const SchemeBundle b = rebuild_bundle(file);
      const Word y = read_observation(obs, obs_file);
      const std::uint64_t want = b.is_mac() ? b.mac.k : b.p2p.k;
      if (y.size() != want)
        throw DomainError("observation has " + std::to_string(y.size()) + " symbols, expected " + std::to_string(want));
      if (b.kind == "mac-mod2") {
        const auto d = SyndromeDetector(b.mac, b.poly1).detect(y);
        out << "phase1=" << (d ? std::to_string(d->first) : "e") << "\nphase2=" << (d ? std::to_string(d->second) : "e")
            << '\n';
      } else if (b.kind == "mac-split") {
        const auto d = b.split->detect(y);
        out << "phase1=" << (d.phases ? std::to_string(d.phases->first) : "e")
            << "\nphase2=" << (d.phases ? std::to_string(d.phases->second) : "e") << "\nmu=" << phase_text(d.mu)
            << "\nm2=" << phase_text(d.m2) << "\nmv=" << phase_text(d.mv) << '\n';
      } else if (b.kind == "concat") {
        const auto ch = parse_channel_spec(channel_text.empty() ? b.design_channel : channel_text);
        if (!ch.dmc) throw DomainError("the concatenated detector needs a point-to-point channel");
        const auto d = ConcatDetector(b.concat, *ch.dmc).detect_detailed(y);
        out << "phase=" << phase_text(d.phase) << "\nsync_candidates=" << d.sync_candidates.size() << '\n';
      } else if (b.kind == "zero-error") {
        out << "phase=" << phase_text(b.zero_error->detect(y)) << '\n';
      } else {
        out << "phase=" << phase_text(MinDistanceDetector(b.p2p).detect(y)) << '\n';
      }
      return 0;
    }

    if (simulate->parsed()) {
      const Json file = read_json_file(scheme_path);
      const SchemeBundle b = rebuild_bundle(file);
      const auto ch = parse_channel_spec(channel_text);
      const SimReport r = simulate_bundle(b, ch, trials, g.seed, workers);
      if (g.format == "csv") {
        out << SimReport::csv_header() << '\n' << r.csv_line() << '\n';
      } else {
        out << r.to_json().dump(2) << '\n';
      }
      if (!g.out_path.empty()) write_text_file(g.out_path, SimReport::csv_header() + "\n" + r.csv_line() + "\n");
      return 0;
    }

    if (bounds->parsed()) {
      Table t;
      if (b_gv->parsed()) {
        const auto v = gv_rate(p);
        t = {{"p", fmt(p)}, {"rate", fmt(v.value)}, {"clamped", v.clamped ? "1" : "0"}};
      } else if (b_lll->parsed()) {
        int d = 0;
        if (bd) {
          d = *bd;
        } else if (bp) {
          d = static_cast<int>(std::floor(2.0 * *bp * bk + 1e-9));
        } else {
          throw DomainError("give --d or --p");
        }
        const BigInt n = lll_max_n(bk, d);
        t = {{"k", std::to_string(bk)}, {"d", std::to_string(d)}, {"n_max", n.str()}};
        if (n >= 1) {
          const double lg = std::log2(n.convert_to<double>());
          t.emplace_back("rate", fmt(lg / bk));
        } else {
          t.emplace_back("rate", "none");
        }
        if (bp) t.emplace_back("gv_rate", fmt(gv_rate(*bp).value));
      } else if (b_thm4->parsed()) {
        const int kmax = tkmax < 0 ? 3 * tr : tkmax;
        const int mk = thm4_min_k(tr, tt, tc, kmax);
        t = {{"r", std::to_string(tr)}, {"t", std::to_string(tt)}, {"c", std::to_string(tc)},
             {"kmax", std::to_string(kmax)}, {"min_k", std::to_string(mk)}};
        if (mk > tr) t.emplace_back("feasible_at_min_k_minus_1", thm4_feasible(tr, tt, tc, mk - 1) ? "1" : "0");
      } else if (b_newub->parsed()) {
        const auto scan = newub_scan(p, rate, step);
        if (scan.violated()) {
          double nearest = scan.violating_mu.front();
          for (double m : scan.violating_mu)
            if (std::abs(m - mu) < std::abs(nearest - mu)) nearest = m;
          t.emplace_back("violated", "mu=" + fmt(nearest) + "±" + fmt(step));
          t.emplace_back("violating_mu_low", fmt(scan.violating_mu.front()));
          t.emplace_back("violating_mu_high", fmt(scan.violating_mu.back()));
          t.emplace_back("violating_points", std::to_string(scan.violating_mu.size()));
        } else {
          t.emplace_back("violated", "none");
        }
        t.emplace_back("argmax_mu", fmt(scan.argmax_mu));
        t.emplace_back("max_gap", fmt(scan.max_gap));
        t.emplace_back("mu_max", fmt(scan.mu_max));
        if (mu >= 0 && mu <= scan.mu_max) {
          const auto terms = newub_terms(p, rate, mu);
          t.emplace_back("mu", fmt(mu));
          t.emplace_back("lhs_at_mu", fmt(terms.lhs));
          t.emplace_back("rhs_at_mu", fmt(terms.rhs));
          t.emplace_back("violated_at_mu", terms.violated() ? "1" : "0");
        }
      } else if (b_cap->parsed()) {
        const auto ch = parse_channel_spec(channel_text);
        if (!ch.dmc) throw DomainError("capacity needs a point-to-point channel");
        const auto c = dmc_capacity(*ch.dmc);
        t = {{"capacity", fmt(c.capacity)}, {"iterations", std::to_string(c.iterations)}, {"gap", fmt(c.gap)}};
        for (std::size_t i = 0; i < c.input.size(); ++i) t.emplace_back("p_x" + std::to_string(i), fmt(c.input[i]));
      } else if (b_region->parsed()) {
        const auto ch = parse_channel_spec(channel_text);
        if (!ch.mac) throw DomainError("mac-region needs a MAC");
        const auto g1 = simplex_grid(ch.mac->x1_size(), resolution);
        const auto g2 = simplex_grid(ch.mac->x2_size(), resolution);
        double best_sum = 0.0;
        for (const auto& a : g1)
          for (const auto& c : g2) best_sum = std::max(best_sum, mac_informations(*ch.mac, a, c).sum);
        t = {{"r1", fmt(r1)},
             {"r2", fmt(r2)},
             {"resolution", std::to_string(resolution)},
             {"contained", mac_ve_region_contains_any(*ch.mac, {r1, r2}, resolution) ? "1" : "0"},
             {"max_sum_information", fmt(best_sum)}};
      }
      emit_table(t, g.format.empty() ? "csv" : g.format, out);
      if (!g.out_path.empty()) {
        std::ostringstream os;
        emit_table(t, "csv", os);
        write_text_file(g.out_path, os.str());
      }
      return 0;
    }
  } catch (const ResourceError& e) {
    err << "unverified at this scale: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("phasedet");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace phasedet
