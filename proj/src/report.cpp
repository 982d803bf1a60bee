#include "valx/report.hpp"

#include <ostream>

namespace valx {

namespace {

const char* kCommandNames[] = {"classify", "value", "degdom", "equiv", "image",
                               "limsets", "residue", "fiber", "report"};

std::string sign_name(int s) { return s < 0 ? "negative" : s > 0 ? "positive" : "zero"; }

struct MissingArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string pseudo_limits(const PMSeq& E) {
  LimSetsReport r = lim_sets(E);
  return r.L1.empty ? r.L2.str() : r.L1.str();
}

struct Context {
  const CommandSpec& cmd;
  SeqSpec spec;
  PMSeq E;
  std::vector<RatFunc> phis;
};

Context load(const CommandSpec& cmd) {
  if (cmd.seq.empty()) throw MissingArgument("--seq is required");
  FieldDescriptor F = cmd.field.empty() ? FieldDescriptor::laurent() : parse_field(cmd.field);
  SeqSpec spec = parse_seq(cmd.seq, F);
  PMSeq E = cmd.prefix ? spec.build(*cmd.prefix) : spec.build();
  std::vector<RatFunc> phis;
  for (const auto& s : cmd.phi) phis.push_back(parse_ratfunc(s, spec.field));
  return {cmd, spec, E, phis};
}

void need_phi(const Context& c) {
  if (c.phis.empty()) throw MissingArgument("--phi is required");
}

Json header(const Context& c) {
  Json j;
  j["sequence"] = c.spec.str();
  j["kind"] = kind_name(c.E.kind);
  j["gauge_cut"] = c.E.gauge_cut.str();
  j["breadth"] = c.E.breadth.str();
  return j;
}

void emit(const Context& c, const Json& j, std::ostream& out) {
  if (c.cmd.json) {
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) {
    if (v.is_array()) {
      for (const auto& row : v) {
        bool first = true;
        for (const auto& [rk, rv] : row.items()) {
          out << (first ? "" : " ") << rk << "=" << (rv.is_string() ? rv.get<std::string>() : rv.dump());
          first = false;
        }
        out << "\n";
      }
    } else {
      out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

Json cmd_classify(const Context& c) {
  Json j = header(c);
  IdealClass cl = classify_ideal(c.E.breadth, c.E.field.group());
  j["category"] = category_name(cl.category);
  j["principal"] = cl.principal;
  j["divisorial"] = cl.divisorial;
  j["strictly_divisorial"] = cl.strictly_divisorial;
  std::vector<FieldElem> pts;
  for (long nu = 0; nu < std::min(8L, audit_prefix()); ++nu) pts.push_back(c.E.term(nu));
  j["prefix_kind"] = prefix_kind_name(classify_prefix(pts, c.E.field).kind);
  return j;
}

Json cmd_degdom(const Context& c) {
  need_phi(c);
  Json j = header(c);
  Window w = c.cmd.window.value_or(Window{});
  j["window"] = std::to_string(w.first) + ":" + std::to_string(w.last);
  Json rows = Json::array();
  for (const auto& phi : c.phis) {
    Json r;
    r["phi"] = phi.str();
    r["degdom"] = degdom(phi, c.E);
    EmpiricalFit f = empirical_slope(phi, c.E, w);
    if (f.folded) {
      r["fit_value"] = f.gamma.str();
    } else {
      r["fit_lambda"] = f.lambda.get_str();
      r["fit_gamma"] = f.gamma.str();
    }
    r["n0"] = f.n0;
    r["certified"] = f.certified;
    rows.push_back(r);
  }
  j["queries"] = rows;
  return j;
}

Json cmd_equiv(const Context& c) {
  if (c.cmd.seq2.empty()) throw MissingArgument("--seq2 is required");
  FieldDescriptor F = c.cmd.field.empty() ? FieldDescriptor::laurent() : parse_field(c.cmd.field);
  SeqSpec spec2 = parse_seq(c.cmd.seq2, F);
  PMSeq E2 = c.cmd.prefix ? spec2.build(*c.cmd.prefix) : spec2.build();
  Equivalence eq = equivalent(c.E, E2);
  Json j;
  j["sequence"] = c.spec.str();
  j["sequence2"] = spec2.str();
  j["equivalent"] = eq.equivalent;
  j["reason"] = eq.reason;
  return j;
}

Json cmd_image(const Context& c) {
  need_phi(c);
  Json j = header(c);
  Window w = c.cmd.window.value_or(Window{});
  Json rows = Json::array();
  for (const auto& phi : c.phis) {
    ImageSequence im = image_sequence(phi, c.E, w);
    Json r;
    r["phi"] = phi.str();
    r["kind"] = prefix_kind_name(im.kind);
    r["lambda"] = im.lambda;
    r["start"] = im.start;
    r["first_term"] = im.terms.front().str();
    r["kind_rule"] = im.kind_rule_holds;
    r["gauge_increases"] = im.gauge_increases;
    r["certified"] = im.certified;
    rows.push_back(r);
  }
  j["queries"] = rows;
  return j;
}

Json cmd_limsets(const Context& c) {
  Json j = header(c);
  LimSetsReport r = lim_sets(c.E);
  j["L1"] = r.L1.str();
  j["L2"] = r.L2.str();
  return j;
}

Json cmd_residue(const Context& c) {
  need_phi(c);
  Json j;
  j["sequence"] = c.spec.str();
  Json rows = Json::array();
  for (const auto& phi : c.phis) {
    Json r;
    r["phi"] = phi.str();
    r["residue"] = residue_in_kT(phi, c.E).str("T");
    rows.push_back(r);
  }
  j["queries"] = rows;
  return j;
}

Json cmd_fiber(const Context& c) {
  Json j = header(c);
  Fiber f = prime_fiber(c.E, PrimeSpec{c.cmd.prime});
  j["prime"] = c.cmd.prime;
  j["size"] = f.size;
  j["tag"] = f.tag;
  return j;
}

}  // namespace

std::optional<Command> command_from_name(const std::string& name) {
  for (std::size_t i = 0; i < std::size(kCommandNames); ++i)
    if (name == kCommandNames[i]) return static_cast<Command>(i);
  return std::nullopt;
}

std::string command_name(Command c) { return kCommandNames[static_cast<std::size_t>(c)]; }

Window parse_window(const std::string& text) {
  auto colon = text.find(':');
  auto bad = [&]() -> Window { throw SyntaxError("window must look like a:b", 1, 1); };
  if (colon == std::string::npos) return bad();
  try {
    std::size_t n1 = 0, n2 = 0;
    long a = std::stol(text.substr(0, colon), &n1);
    long b = std::stol(text.substr(colon + 1), &n2);
    if (n1 != colon || n2 != text.size() - colon - 1 || a < 0 || b < a) return bad();
    return {a, b};
  } catch (const std::logic_error&) {
    return bad();
  }
}

Json sequence_report(const SeqSpec& spec, const PMSeq& E, const std::vector<std::string>& phis) {
  Json j;
  j["sequence"] = spec.str();
  j["kind"] = kind_name(E.kind);
  j["gauge_cut"] = E.gauge_cut.str();
  j["breadth"] = E.breadth.str();
  j["pseudo_limits"] = pseudo_limits(E);
  Json rows = Json::array();
  for (const auto& text : phis) {
    RatFunc phi = parse_ratfunc(text, spec.field);
    ExtValue v = v_ext(phi, E);
    Json r;
    r["phi"] = phi.str();
    if (v.infinite) {
      r["lambda"] = nullptr;
      r["gamma"] = "inf";
    } else {
      r["lambda"] = v.lambda;
      r["gamma"] = v.gamma.str();
    }
    r["sign"] = sign_name(v.sign());
    r["member_VE"] = v.sign() >= 0;
    r["member_ME"] = v.sign() > 0;
    rows.push_back(r);
  }
  j["queries"] = rows;
  return j;
}

int run(const CommandSpec& cmd, std::ostream& out, std::ostream& err) {
  try {
    Context c = load(cmd);
    Json j;
    switch (cmd.command) {
      case Command::classify: j = cmd_classify(c); break;
      case Command::value:
        need_phi(c);
        j = sequence_report(c.spec, c.E, cmd.phi);
        break;
      case Command::report: j = sequence_report(c.spec, c.E, cmd.phi); break;
      case Command::degdom: j = cmd_degdom(c); break;
      case Command::equiv: j = cmd_equiv(c); break;
      case Command::image: j = cmd_image(c); break;
      case Command::limsets: j = cmd_limsets(c); break;
      case Command::residue: j = cmd_residue(c); break;
      case Command::fiber: j = cmd_fiber(c); break;
    }
    emit(c, j, out);
    return 0;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const MissingArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace valx
