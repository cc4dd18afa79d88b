#include "phasedet/io.hpp"

#include <fstream>
#include <sstream>

#include "phasedet/errors.hpp"

namespace phasedet {

namespace {

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw DomainError("trailing characters");
    return v;
  } catch (const std::logic_error&) {
    throw DomainError("malformed " + what + ": " + text);
  }
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw DomainError("trailing characters");
    return v;
  } catch (const std::logic_error&) {
    throw DomainError("malformed " + what + ": " + text);
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

Dmc dmc_from_json(const Json& j) {
  const Json& m = j.is_object() ? j.at("matrix") : j;
  if (!m.is_array()) throw DomainError("DMC JSON must be a matrix or {\"matrix\": ...}");
  return Dmc(m.get<std::vector<std::vector<double>>>());
}

Mac mac_from_json(const Json& j) {
  try {
    return Mac(j.at("x1").get<int>(), j.at("x2").get<int>(), j.at("y").get<int>(), j.at("tensor").get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw DomainError(std::string("MAC JSON needs x1, x2, y, tensor: ") + e.what());
  }
}

ChannelSpec parse_channel_spec(const std::string& text) {
  ChannelSpec spec;
  spec.text = text;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "mod2" && arg.empty()) {
    spec.mac = Mac::mod2();
  } else if (kind == "ptt" && arg.empty()) {
    spec.mac = Mac::push_to_talk();
  } else if (kind == "bsc") {
    spec.dmc = Dmc::bsc(parse_double(arg, "crossover probability"));
  } else if (kind == "noiseless") {
    spec.dmc = Dmc::noiseless(parse_int(arg, "alphabet size"));
  } else if (kind == "typewriter") {
    spec.dmc = Dmc::typewriter(parse_int(arg, "alphabet size"));
  } else if (kind == "symmetric") {
    const auto c2 = arg.find(':');
    if (c2 == std::string::npos) throw DomainError("expected symmetric:<q>:<eps>");
    spec.dmc = Dmc::symmetric(parse_int(arg.substr(0, c2), "alphabet size"), parse_double(arg.substr(c2 + 1), "error"));
  } else if (kind == "adv") {
    const double p = parse_double(arg, "adversarial fraction");
    AdversarialBudget check(p);
    spec.adversarial = check.p;
  } else if (kind == "dmc") {
    spec.dmc = dmc_from_json(read_json_file(arg));
  } else if (kind == "mac") {
    spec.mac = mac_from_json(read_json_file(arg));
  } else if (kind == "pair") {
    const auto x = arg.find('x');
    if (x == std::string::npos) throw DomainError("expected pair:<q1>x<q2>");
    spec.mac = Mac::collision_free(parse_int(arg.substr(0, x), "alphabet"), parse_int(arg.substr(x + 1), "alphabet"));
  } else {
    throw DomainError("unknown channel spec: " + text);
  }
  return spec;
}

Json sequence_to_json(const CyclicSequence& seq, const Json& construction) {
  Json j;
  j["alphabet"] = seq.alphabet();
  j["n"] = seq.size();
  j["symbols"] = seq.symbols();
  j["construction"] = construction;
  return j;
}

CyclicSequence sequence_from_json(const Json& j) {
  try {
    const int q = j.at("alphabet").get<int>();
    auto symbols = j.at("symbols").get<Word>();
    if (j.contains("n") && j.at("n").get<std::uint64_t>() != symbols.size()) throw DomainError("n differs from the symbol count");
    return CyclicSequence(q, std::move(symbols));
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed sequence JSON: ") + e.what());
  }
}

Json bundle_to_json(const SchemeBundle& b) {
  if (b.is_mac()) {
    const Json& c = b.kind == "mac-split" ? b.split->scheme().construction : b.mac.construction;
    Json j;
    j["seq1"] = sequence_to_json(b.mac.seq1, Json{{"kind", b.kind + "-user1"}});
    j["seq2"] = sequence_to_json(b.mac.seq2, Json{{"kind", b.kind + "-user2"}});
    j["k"] = b.mac.k;
    j["detector"] = b.mac.detector;
    j["construction"] = c;
    return j;
  }
  Json j = sequence_to_json(b.p2p.sequence, b.p2p.construction);
  j["k"] = b.p2p.k;
  if (b.kind == "concat") {
    j["detector"] = Json{{"type", "concat-ml"}, {"channel", b.design_channel}};
    j["sync"] = b.concat->sync();
  } else if (b.kind == "zero-error") {
    j["detector"] = Json{{"type", "zero-error-support"}};
    j["sync"] = Word(b.zero_error->slot(), b.zero_error->params().beta);
  } else {
    j["detector"] = Json{{"type", "min-distance"}};
  }
  return j;
}

namespace {

ConcatParams concat_params_from_json(const Json& c) {
  ConcatParams p;
  p.code = make_code(c.at("code").get<std::string>());
  p.l = c.at("l").get<int>();
  p.tau = c.at("tau").get<int>();
  const Json& base = c.at("base");
  const std::string base_kind = base.at("kind").get<std::string>();
  if (base_kind == "debruijn") {
    p.base = BaseKind::DeBruijn;
  } else if (base_kind == "msequence") {
    p.base = BaseKind::MSequence;
    p.base_poly = Gf2Poly::parse(base.at("poly").get<std::string>());
  } else {
    throw DomainError("unknown base kind: " + base_kind);
  }
  p.sync_pmf = c.at("sync_pmf").get<std::vector<double>>();
  p.seed = c.at("seed").get<std::uint64_t>();
  return p;
}

}  // namespace

SchemeBundle rebuild_bundle(const Json& file) {
  try {
    const Json& c = file.at("construction");
    SchemeBundle b;
    b.kind = c.at("kind").get<std::string>();
    if (b.kind == "lfsr") {
      b.p2p = build_adversarial(Gf2Poly::parse(c.at("poly").get<std::string>()), file.at("k").get<std::uint64_t>());
    } else if (b.kind == "debruijn") {
      b.p2p = build_debruijn_scheme(c.at("q").get<int>(), c.at("order").get<int>(), file.at("k").get<std::uint64_t>());
    } else if (b.kind == "lll") {
      auto res = lll_random_search(file.at("k").get<std::uint64_t>(), c.at("d").get<int>(), file.at("n").get<std::uint64_t>(),
                                   c.at("attempts").get<std::uint64_t>(), c.at("seed").get<std::uint64_t>());
      if (!res.scheme) throw DomainError("stored random search does not reproduce");
      b.p2p = *res.scheme;
    } else if (b.kind == "concat") {
      b.concat = std::make_shared<const ConcatScheme>(ConcatScheme::build(concat_params_from_json(c)));
      b.p2p = b.concat->scheme();
      b.design_channel = file.contains("detector") && file["detector"].contains("channel")
                             ? file["detector"]["channel"].get<std::string>()
                             : "bsc:0";
    } else if (b.kind == "zero-error") {
      ZeroErrorParams p;
      p.code_spec = c.at("code").get<std::string>();
      p.channel_spec = c.at("channel").get<std::string>();
      p.code = make_zero_error_code(p.code_spec);
      auto ch = parse_channel_spec(p.channel_spec);
      if (!ch.dmc) throw DomainError("zero-error scheme needs a DMC");
      p.channel = *ch.dmc;
      p.beta = c.at("beta").get<Symbol>();
      p.gamma = c.at("gamma").get<Symbol>();
      p.r = c.at("r").get<int>();
      b.zero_error = std::make_shared<const ZeroErrorScheme>(ZeroErrorScheme::build(p));
      b.p2p = b.zero_error->scheme();
    } else if (b.kind == "mac-mod2") {
      b.poly1 = Gf2Poly::parse(c.at("poly1").get<std::string>());
      b.mac = build_mod2_two_primitives(b.poly1, Gf2Poly::parse(c.at("poly2").get<std::string>()),
                                        file.at("k").get<std::uint64_t>());
    } else if (b.kind == "mac-split") {
      RateSplitParams p;
      p.mac_spec = c.at("mac").get<std::string>();
      auto ch = parse_channel_spec(p.mac_spec);
      if (!ch.mac) throw DomainError("rate splitting needs a MAC");
      p.mac = *ch.mac;
      p.f = c.at("f").get<std::vector<Symbol>>();
      p.pu = c.at("pu").get<std::vector<double>>();
      p.pv = c.at("pv").get<std::vector<double>>();
      p.px2 = c.at("px2").get<std::vector<double>>();
      p.u = concat_params_from_json(c.at("u"));
      p.x2 = concat_params_from_json(c.at("x2"));
      p.v = concat_params_from_json(c.at("v"));
      p.max_tau_increments = 0;
      b.split = std::make_shared<const RateSplitScheme>(RateSplitScheme::build(p));
      b.mac = b.split->scheme();
    } else {
      throw DomainError("unknown construction kind: " + b.kind);
    }
    return b;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed scheme file: ") + e.what());
  }
}

StoredComparison compare_with_rebuild(const Json& file, const SchemeBundle& rebuilt) {
  StoredComparison cmp;
  auto check_seq = [&](const Json& stored, const CyclicSequence& fresh, const std::string& label) {
    const CyclicSequence s = sequence_from_json(stored);
    if (s.alphabet() != fresh.alphabet() || s.size() != fresh.size()) {
      cmp.matches = false;
      cmp.detail += label + " length or alphabet differs; ";
      return;
    }
    for (std::uint64_t i = 0; i < s.size(); ++i) {
      if (s.symbols()[i] != fresh.symbols()[i]) {
        cmp.matches = false;
        cmp.detail += label + " differs at position " + std::to_string(i + 1) + "; ";
        return;
      }
    }
  };
  if (rebuilt.is_mac()) {
    check_seq(file.at("seq1"), rebuilt.mac.seq1, "seq1");
    check_seq(file.at("seq2"), rebuilt.mac.seq2, "seq2");
    if (file.at("k").get<std::uint64_t>() != rebuilt.mac.k) {
      cmp.matches = false;
      cmp.detail += "k differs; ";
    }
  } else {
    check_seq(file, rebuilt.p2p.sequence, "sequence");
    if (file.at("k").get<std::uint64_t>() != rebuilt.p2p.k) {
      cmp.matches = false;
      cmp.detail += "k differs; ";
    }
    if (rebuilt.kind == "concat" && file.contains("sync") && file.at("sync").get<Word>() != rebuilt.concat->sync()) {
      cmp.matches = false;
      cmp.detail += "sync differs; ";
    }
  }
  return cmp;
}

Word parse_observation(const std::string& text) {
  Word out;
  if (text.find(',') == std::string::npos) {
    for (char ch : text) {
      if (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t') continue;
      if (ch < '0' || ch > '9') throw DomainError("observation characters must be digits");
      out.push_back(static_cast<Symbol>(ch - '0'));
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<Symbol>(parse_int(item, "observation symbol")));
  }
  if (out.empty()) throw DomainError("empty observation");
  return out;
}

}  // namespace phasedet
