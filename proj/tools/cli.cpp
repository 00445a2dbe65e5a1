#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "versal/errors.hpp"
#include "versal/parse.hpp"
#include "versal/versal.hpp"

namespace versal::cli {

using json = nlohmann::ordered_json;

const std::vector<std::string> kCommands{"invariants", "miniversal", "ks", "lift", "verify", "ext"};

namespace {

constexpr unsigned kDefaultOrder = 3;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json exact(const FieldElem& c) {
  const mpq_class& v = c.value();
  if (v.get_den() == 1 && v.get_num().fits_slong_p()) return v.get_num().get_si();
  return c.to_string();
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(exact(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json dimension_json(const Dimension& d) { return d.infinite ? json("INFINITE") : json(d.value); }

json polys_json(const std::vector<Poly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

json vectors_json(const std::vector<std::vector<Poly>>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(polys_json(v));
  return a;
}

struct Loaded {
  InputSpec spec;
  Singularity reference;
  std::optional<EmbeddedLifting> family;
};

Loaded load(const InputSpec& in) {
  RingPtr xring = make_ring(in.vars, in.field);
  std::vector<std::string> all = in.vars;
  if (in.base) all.insert(all.end(), in.base->params.begin(), in.base->params.end());
  RingPtr ring = make_ring(all, in.field);
  std::vector<Poly> members, fibre;
  for (std::size_t j = 0; j < in.equations.size(); ++j) {
    Poly p = parse_poly(ring, in.equations[j]);
    members.push_back(p);
    std::vector<Poly> images;
    for (std::size_t i = 0; i < ring->nvars(); ++i)
      images.push_back(i < xring->nvars() ? Poly::variable(xring, i) : Poly(xring));
    fibre.push_back(substitute(p, xring, images));
  }
  Singularity s(fibre);
  std::optional<EmbeddedLifting> fam;
  if (in.base) {
    RingPtr tring = make_ring(in.base->params, in.field);
    std::optional<ArtinianAlgebra> base;
    if (!in.base->relations.empty()) {
      std::vector<Poly> rel;
      for (const auto& r : in.base->relations) rel.push_back(parse_poly(tring, r));
      base.emplace(tring, rel);
    } else {
      std::vector<Poly> rel;
      for (const auto& m : monomials_of_degree(tring->nvars(), in.base->order + 1))
        rel.push_back(Poly::term(tring, m, tring->one()));
      base.emplace(tring, rel);
    }
    fam.emplace(*base, members, s);
  }
  return Loaded{in, std::move(s), std::move(fam)};
}

json input_echo(const JobSpec& job, const InputSpec& in) {
  json j;
  j["file"] = std::filesystem::path(job.input_path).filename().string();
  j["vars"] = in.vars;
  j["field"] = in.field.name();
  j["equations"] = in.equations;
  if (in.base) {
    json b;
    b["params"] = in.base->params;
    if (in.base->relations.empty())
      b["order"] = in.base->order;
    else
      b["relations"] = in.base->relations;
    j["base"] = std::move(b);
  } else {
    j["base"] = nullptr;
  }
  return j;
}

unsigned order_option(const JobSpec& job) {
  auto it = job.options.find("order");
  if (it == job.options.end()) return kDefaultOrder;
  try {
    std::size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size() || v < 1 || v > 64) throw std::invalid_argument("range");
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    throw ParseError("--order expects a positive integer, got '" + it->second + "'");
  }
}

json ks_json(const KodairaSpencerMatrix& ks) { return matrix_json(ks.matrix); }

json invariants(const Singularity& s) {
  json j;
  j["nvars"] = s.nvars();
  j["codim"] = s.codim();
  j["hypersurface"] = s.is_hypersurface();
  j["regular_sequence"] = is_regular_sequence(s);
  if (!j["regular_sequence"].get<bool>()) throw NotRegularSequence();
  j["isolated"] = certify_isolated(s);
  if (!j["isolated"].get<bool>()) throw NotIsolated();
  if (s.is_hypersurface()) {
    j["tjurina"] = tjurina_algebra(s).dimension;
    try {
      j["milnor"] = milnor_algebra(s).dimension;
    } catch (const MathRejection&) {
      j["milnor"] = "INFINITE";
    }
  } else {
    j["tjurina"] = nullptr;
    j["milnor"] = nullptr;
  }
  auto t1 = tangent_module(s, 1);
  auto t0 = tangent_module(s, 0);
  auto t2 = tangent_module(s, 2);
  j["t0"] = dimension_json(t0.dimension);
  j["t1"] = dimension_json(t1.dimension);
  j["t2"] = dimension_json(t2.dimension);
  j["t1_basis"] = vectors_json(*t1.basis);
  j["conormal_free"] = t2.conormal_free;
  return j;
}

json family_json(const DeformationFamily& f, const std::vector<std::vector<Poly>>& basis) {
  json j;
  j["params"] = f.params();
  json members = json::array();
  for (std::size_t k = 0; k < f.members().size(); ++k) members.push_back(f.member_string(k));
  j["members"] = std::move(members);
  j["basis"] = vectors_json(basis);
  j["base_relations"] = json::array();
  return j;
}

json lift_json(const LiftResult& r) {
  json j;
  j["order"] = r.order;
  j["flat"] = r.certificate.flat;
  j["koszul"] = r.certificate.used_koszul;
  j["relations"] = r.certificate.syzygies.size();
  json lifted = json::array();
  for (const auto& a : r.certificate.lifted) lifted.push_back(polys_json(a));
  j["lifted_relations"] = std::move(lifted);
  json corr = json::array();
  for (const auto& a : r.corrections) corr.push_back(polys_json(a));
  j["corrections"] = std::move(corr);
  j["verified"] = verify_certificate(r.lifting, r.certificate);
  return j;
}

json eclass_json(const EClass& e) {
  json j = json::array();
  for (std::size_t k = 0; k < e.q_basis.size(); ++k) {
    json c = json::array();
    for (const auto& x : e.coords[k]) c.push_back(exact(x));
    j.push_back(json{{"q", e.q_basis[k].to_string()}, {"coords", std::move(c)}});
  }
  return j;
}

/// Fills `out` for the command; returns the exit code.
int dispatch(const JobSpec& job, const Loaded& in, json& out) {
  const Singularity& s = in.reference;
  const std::string& cmd = job.command;
  if (cmd == "invariants") {
    out["invariants"] = invariants(s);
    return 0;
  }
  if (cmd == "miniversal") {
    VersalResult v = miniversal(s);
    out["invariants"] = json{{"tau", v.tau}};
    out["family"] = family_json(v.family, v.basis);
    out["ks_matrix"] = ks_json(v.ks);
    out["certificates"] = json{{"regular_sequence", true}, {"isolated", true}, {"ks_identity", v.ks.matrix.is_identity()}};
    return 0;
  }
  if (cmd == "ks") {
    if (!certify_isolated(s)) throw NotIsolated();
    if (in.family) {
      auto fam = DeformationFamily::from_lifting(*in.family);
      auto ks = kodaira_spencer(fam);
      out["invariants"] = json{{"tau", ks.matrix.rows()}};
      out["family"] = json{{"params", fam.params()}, {"members", polys_json(fam.members())}};
      out["ks_matrix"] = ks_json(ks);
      out["ks_rows"] = vectors_json(ks.row_basis);
    } else {
      VersalResult v = miniversal(s);
      out["invariants"] = json{{"tau", v.tau}};
      out["family"] = family_json(v.family, v.basis);
      out["ks_matrix"] = ks_json(v.ks);
      out["ks_rows"] = vectors_json(v.ks.row_basis);
    }
    return 0;
  }
  if (cmd == "lift") {
    const unsigned n = order_option(job);
    if (!certify_isolated(s)) throw NotIsolated();
    std::optional<DeformationFamily> fam;
    if (in.family)
      fam.emplace(s, in.family->base().t_vars(), in.family->equations());
    else
      fam.emplace(miniversal(s).family);
    json steps = json::array();
    bool flat = true;
    for (unsigned k = 1; k <= n; ++k) {
      LiftResult r = lift_to_next_order(*fam, k);
      flat = flat && r.certificate.flat;
      steps.push_back(lift_json(r));
    }
    json members = json::array();
    for (std::size_t k = 0; k < fam->members().size(); ++k) members.push_back(fam->member_string(k));
    out["family"] = json{{"params", fam->params()}, {"members", std::move(members)}};
    out["certificates"] = json{{"flat_through_order", n}, {"flat", flat}, {"steps", std::move(steps)}};
    auto obs = first_obstruction(s);
    out["invariants"] = json{{"tau", obs.tau}, {"obs_dimension", obs.obs_dimension}, {"first_obstruction_zero", obs.zero}};
    return 0;
  }
  if (cmd == "verify") {
    if (!in.family) throw ParseError("verify needs a base: block describing the trial family");
    const unsigned n = order_option(job);
    VersalResult v = miniversal(s);
    VersalityReport rep = verify_versality_order(v, n, *in.family);
    json subst = json::object();
    for (std::size_t i = 0; i < rep.substitution.size(); ++i)
      subst[v.family.params()[i]] = rep.substitution[i].to_string();
    json steps = json::array();
    for (const auto& st : rep.steps)
      steps.push_back(json{{"order", st.order}, {"e_before", eclass_json(st.before)}, {"e_after_zero", st.after.is_zero()}});
    out["invariants"] = json{{"tau", v.tau}, {"trial_order", in.family->base().order()}};
    out["family"] = family_json(v.family, v.basis);
    out["certificates"] = json{{"versal_at_order", n}, {"ok", rep.ok}, {"substitution", std::move(subst)},
                               {"steps", std::move(steps)}};
    if (!rep.ok) {
      out["certificates"]["failed_order"] = *rep.failed_order;
      out["certificates"]["message"] = rep.message;
      return 1;
    }
    return 0;
  }
  if (cmd == "ext") {
    if (!certify_isolated(s)) throw NotIsolated();
    json j;
    for (int i = 0; i <= 2; ++i) {
      auto t = tangent_module(s, i);
      json e;
      e["dimension"] = dimension_json(t.dimension);
      e["generators"] = t.presentation.rank();
      e["relations"] = t.presentation.relations().size();
      if (t.basis) e["basis"] = vectors_json(*t.basis);
      if (t.witness) e["witness"] = polys_json(*t.witness);
      j["T" + std::to_string(i)] = std::move(e);
    }
    out["invariants"] = std::move(j);
    auto obs = first_obstruction(s);
    out["certificates"] = json{{"conormal_free", true}, {"first_obstruction_zero", obs.zero}};
    return 0;
  }
  throw ParseError("unknown command '" + cmd + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

InputSpec parse_input(const std::string& text) {
  InputSpec in;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  bool vars_seen = false, in_base = false;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto colon = line.find(':');
    std::string key = colon == std::string::npos ? "" : trim(line.substr(0, colon));
    std::string value = colon == std::string::npos ? "" : trim(line.substr(colon + 1));
    try {
      if (key == "vars") {
        if (vars_seen) throw ParseError("duplicate vars: line", lineno);
        in.vars = parse_identifier_list(value);
        if (in.vars.empty()) throw ParseError("vars: needs at least one variable", lineno);
        vars_seen = true;
      } else if (key == "field") {
        in.field = Field::parse(value);
        in.field_given = true;
      } else if (key == "base") {
        if (in.base) throw ParseError("duplicate base: block", lineno);
        in.base.emplace();
        in_base = true;
        if (!value.empty()) in.base->params = split_list(value);
      } else if (key == "params" || key == "order" || key == "relations") {
        if (!in_base) throw ParseError(key + ": outside a base: block", lineno);
        if (key == "params") {
          in.base->params = split_list(value);
        } else if (key == "order") {
          std::size_t used = 0;
          long v = std::stol(value, &used);
          if (used != value.size() || v < 0) throw ParseError("order: expects a non-negative integer", lineno);
          in.base->order = static_cast<unsigned>(v);
          in.base->order_given = true;
        } else {
          in.base->relations = split_list(value);
        }
      } else if (colon != std::string::npos) {
        throw ParseError("unknown key '" + key + "'", lineno);
      } else {
        if (!vars_seen) throw ParseError("equation before the vars: line", lineno);
        if (in_base) throw ParseError("equations must precede the base: block", lineno);
        in.equations.push_back(line);
      }
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.what(), lineno);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno);
    } catch (const std::out_of_range& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!vars_seen) throw ParseError("missing vars: line");
  if (in.equations.empty()) throw ParseError("no equations given");
  if (in.base && in.base->params.empty()) throw ParseError("base: block without params");
  return in;
}

json without_timings(json doc) {
  if (doc.is_object()) {
    doc.erase("timings");
    for (auto& [k, v] : doc.items()) v = without_timings(v);
  }
  return doc;
}

namespace {

void render(const json& v, const std::string& prefix, std::ostringstream& os) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) render(x, prefix.empty() ? k : prefix + "." + k, os);
  } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& x) { return x.is_object(); })) {
    for (std::size_t i = 0; i < v.size(); ++i) render(v[i], prefix + "[" + std::to_string(i) + "]", os);
  } else if (v.is_string()) {
    os << prefix << ": " << v.get<std::string>() << "\n";
  } else {
    os << prefix << ": " << v.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const json& doc) {
  std::ostringstream os;
  render(doc, "", os);
  return os.str();
}

Report run(const JobSpec& job) {
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  json& out = rep.structured;
  out["command"] = job.command;
  out["defaults"] = json{{"field", "Q"}, {"ordering", "negdegrevlex"}, {"order", kDefaultOrder}, {"basis", "staircase"}};
  json opts = json::object();
  for (const auto& [k, v] : job.options) opts[k] = v;
  if (job.field_spec) opts["field"] = *job.field_spec;
  out["options"] = std::move(opts);
  try {
    if (std::find(kCommands.begin(), kCommands.end(), job.command) == kCommands.end())
      throw ParseError("unknown command '" + job.command + "'");
    InputSpec in = parse_input(read_file(job.input_path));
    if (job.field_spec) in.field = Field::parse(*job.field_spec);
    out["input"] = input_echo(job, in);
    Loaded loaded = load(in);
    rep.exit_code = dispatch(job, loaded, out);
  } catch (const MathRejection& e) {
    rep.exit_code = 1;
    out["error"] = json{{"kind", "rejection"}, {"message", e.what()}};
  } catch (const ParseError& e) {
    rep.exit_code = 2;
    out["error"] = json{{"kind", "parse"}, {"message", e.what()}};
  } catch (const std::invalid_argument& e) {
    rep.exit_code = 2;
    out["error"] = json{{"kind", "input"}, {"message", e.what()}};
  }
  out["exit_code"] = rep.exit_code;
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out["timings"] = json{{"total_ms", ms}};
  rep.text = render_text(out);
  return rep;
}

}  // namespace versal::cli
