#include "minlag/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <thread>

#include "minlag/error.hpp"

namespace minlag {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- parsing

class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(ErrorCode::parse, path_ + ": expected an object");
  }

  void allow(std::initializer_list<const char*> keys) {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!ok.count(it.key())) fail(ErrorCode::parse, field(it.key()) + ": unknown key");
  }

  bool has(const char* key) const { return obj_.contains(key); }
  const json& raw(const char* key) const { return obj_.at(key); }
  std::string field(const std::string& key) const { return path_ + "." + key; }

  std::optional<long long> integer(const char* key) const {
    if (!has(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) fail(ErrorCode::parse, field(key) + ": expected an integer");
    return v.get<long long>();
  }
  std::optional<double> number(const char* key) const {
    if (!has(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_number()) fail(ErrorCode::parse, field(key) + ": expected a number");
    return v.get<double>();
  }
  std::optional<std::string> string(const char* key) const {
    if (!has(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_string()) fail(ErrorCode::parse, field(key) + ": expected a string");
    return v.get<std::string>();
  }
  const json* array(const char* key) const {
    if (!has(key)) return nullptr;
    const json& v = obj_.at(key);
    if (!v.is_array()) fail(ErrorCode::parse, field(key) + ": expected an array");
    return &v;
  }

 private:
  const json& obj_;
  std::string path_;
};

int small_int(long long v, const std::string& path) {
  if (v < -1000000 || v > 1000000) fail(ErrorCode::parse, path + ": integer out of range");
  return static_cast<int>(v);
}

ImmersionSpec parse_immersion(const json& obj, const std::string& path, bool top_level) {
  Reader r(obj, path);
  if (top_level)
    r.allow({"kind", "n", "n1", "n2", "c_tilde", "sign_choices", "sphere_chart", "constants",
             "factors", "split", "sphere_rotation", "sample_count", "seed", "jet_order", "tolerances",
             "output_format", "points"});
  else
    r.allow({"kind", "n", "n1", "n2", "c_tilde", "sign_choices", "sphere_chart", "constants",
             "factors", "split", "sphere_rotation"});
  ImmersionSpec s;
  const auto kind = r.string("kind");
  if (!kind) fail(ErrorCode::parse, r.field("kind") + ": required");
  const auto k = parse_kind(*kind);
  if (!k) fail(ErrorCode::parse, r.field("kind") + ": unknown kind '" + *kind + "'");
  s.kind = *k;
  s.c_tilde = s.kind == ImmersionKind::totally_geodesic ? 0.0 : 1.0;
  if (auto v = r.integer("n")) s.n = small_int(*v, r.field("n"));
  if (auto v = r.integer("n1")) s.n1 = small_int(*v, r.field("n1"));
  if (auto v = r.integer("n2")) s.n2 = small_int(*v, r.field("n2"));
  if (auto v = r.number("c_tilde")) s.c_tilde = *v;
  if (auto v = r.integer("sphere_chart")) s.sphere_chart = small_int(*v, r.field("sphere_chart"));
  if (const json* a = r.array("sign_choices")) {
    for (std::size_t i = 0; i < a->size(); ++i) {
      const json& e = (*a)[i];
      const std::string p = r.field("sign_choices") + "[" + std::to_string(i) + "]";
      if (!e.is_number_integer()) fail(ErrorCode::parse, p + ": expected an integer");
      s.sign_choices.push_back(small_int(e.get<long long>(), p));
    }
  }
  if (r.has("constants")) {
    Reader c(r.raw("constants"), r.field("constants"));
    c.allow({"r1", "r2", "a", "omega1", "omega2"});
    CurveConstants cc;
    cc.r1 = c.number("r1").value_or(0.0);
    cc.r2 = c.number("r2").value_or(0.0);
    cc.a = c.number("a").value_or(0.0);
    cc.omega1 = c.number("omega1");
    cc.omega2 = c.number("omega2");
    s.constants = cc;
  }
  if (const json* a = r.array("factors")) {
    for (std::size_t i = 0; i < a->size(); ++i)
      s.factors.push_back(
          parse_immersion((*a)[i], r.field("factors") + "[" + std::to_string(i) + "]", false));
  }
  if (const json* a = r.array("split")) {
    if (a->size() != 2) fail(ErrorCode::parse, r.field("split") + ": expected [n1, n2]");
    for (std::size_t i = 0; i < 2; ++i)
      if (!(*a)[i].is_number_integer())
        fail(ErrorCode::parse, r.field("split") + "[" + std::to_string(i) + "]: expected an integer");
    s.split = FactorSplit{small_int((*a)[0].get<long long>(), r.field("split")),
                          small_int((*a)[1].get<long long>(), r.field("split"))};
  }
  if (const json* a = r.array("sphere_rotation")) {
    const std::string p = r.field("sphere_rotation");
    const int rows = static_cast<int>(a->size());
    Matrix m(rows, rows);
    for (int i = 0; i < rows; ++i) {
      const json& row = (*a)[i];
      if (!row.is_array() || static_cast<int>(row.size()) != rows)
        fail(ErrorCode::parse, p + ": expected a square matrix");
      for (int k = 0; k < rows; ++k) {
        if (!row[k].is_number()) fail(ErrorCode::parse, p + ": expected numbers");
        m(i, k) = row[k].get<double>();
      }
    }
    s.sphere_rotation = m;
  }
  const bool uses_pair = s.kind == ImmersionKind::product_eq381;
  if (!uses_pair && (s.n1 != 0 || s.n2 != 0))
    fail(ErrorCode::validation, path + ": n1/n2 apply to product_eq381 only");
  if (uses_pair && s.n != 0 && s.n != s.n1 + s.n2)
    fail(ErrorCode::validation, path + ": n must equal n1 + n2");
  if (uses_pair) s.n = s.n1 + s.n2;
  return s;
}

// ---------------------------------------------------------------- pipeline

struct PointResult {
  enum class Status { ok, skipped, error } status = Status::ok;
  std::vector<double> point;
  std::string code;
  std::string message;
  std::map<std::string, double> values;
  std::optional<SectionalProfile> profile;
  std::vector<double> lambda;
  std::vector<std::optional<double>> mu;
  std::vector<int> epsilon;
  std::vector<double> stationarity;
  RelationMap relations;
};

struct CheckDef {
  std::string name;
  std::string tier;
  bool applicable;
};

std::vector<CheckDef> check_defs(const AuditConfig& cfg) {
  std::vector<CheckDef> d = {
      {"ambient.unit_norm", "lift", true},
      {"ambient.horizontality", "lift", true},
      {"ambient.lagrangian", "lift", true},
      {"cubic_form.symmetry", "shape", true},
      {"minimality", "minimality", cfg.spec.expects_minimal()},
      {"gauss", "third_order", true},
      {"codazzi", "third_order", true},
      {"ricci_equation", "third_order", true},
      {"tsinghua", "third_order", true},
      {"ricci_identity", "fourth_order", cfg.jet_order >= 4},
      {"nabla_h", "third_order", cfg.spec.expects_parallel()},
      {"curvature.symmetry", "third_order", true},
      {"curvature.bianchi", "third_order", true},
  };
  if (cfg.spec.factor_split()) {
    for (const char* n : {"curvature.c1_constancy", "curvature.c2_constancy", "curvature.mixed",
                          "main_theorem.c1c2"})
      d.push_back({n, "third_order", true});
    d.push_back({"frame.stationarity", "shape", true});
    for (const char* n : {"mixed_block", "y_isotropy", "mu_square_sum", "y_block",
                          "lower_triangular", "trace", "quadratic", "recursion"})
      d.push_back({std::string("frame.") + n, "fourth_order", true});
    d.push_back({"frame.lambda_closed_form", "spectral", true});
    d.push_back({"spectral.closed_form", "spectral", true});
  }
  return d;
}

PointResult evaluate_point(const AuditConfig& cfg, const Immersion& im, int index,
                           std::vector<double> point) {
  PointResult pr;
  pr.point = point;
  try {
    im.check_domain(point);
    const LiftSample sample = sample_lift(im, point, cfg.jet_order);
    const FrameData frame = frame_and_metric(sample);
    const AmbientResiduals amb = ambient_structure_residuals(sample, frame);
    const ShapeTensor shape = shape_tensor_unchecked(sample, frame);
    const CurvatureData curv = intrinsic_curvature(sample, frame);
    const NablaH dh = nabla_h(sample, frame, curv);
    const double c_tilde = cfg.spec.c_tilde;
    const StructuralResiduals sr = structural_residuals(shape, curv, dh, c_tilde);
    auto& v = pr.values;
    v["ambient.unit_norm"] = amb.unit_norm;
    v["ambient.horizontality"] = amb.horizontality;
    v["ambient.lagrangian"] = amb.lagrangian;
    v["cubic_form.symmetry"] = shape.asymmetry;
    v["minimality"] = shape.minimality_residual();
    v["gauss"] = sr.gauss;
    v["codazzi"] = sr.codazzi;
    v["ricci_equation"] = sr.ricci_eq;
    v["tsinghua"] = sr.tsinghua;
    if (sr.ricci_identity) v["ricci_identity"] = *sr.ricci_identity;
    v["nabla_h"] = dh.nabla_h.max_abs();
    v["curvature.symmetry"] = curv.symmetry_residual();
    v["curvature.bianchi"] = curv.bianchi_residual();

    if (const auto split = cfg.spec.factor_split()) {
      const SectionalProfile prof = sectional_curvature_profile(
          curv, frame, *split, splitmix64(cfg.seed + static_cast<std::uint64_t>(index)));
      pr.profile = prof;
      v["curvature.c1_constancy"] = prof.c1_deviation;
      v["curvature.c2_constancy"] = prof.c2_deviation;
      v["curvature.mixed"] = std::max(std::abs(prof.mixed_estimate), prof.mixed_deviation);
      v["main_theorem.c1c2"] = std::min(std::abs(prof.c1_estimate), std::abs(prof.c2_estimate));

      const auto [b1, b2] = factor_bases(frame, *split);
      FrameOptions fo;
      fo.strict = false;
      const AdaptedFrame fr = extract_adapted_frame(shape.cubic, b1, b2, fo);
      double stat = 0.0;
      for (double s : fr.stationarity) stat = std::max(stat, s);
      v["frame.stationarity"] = stat;
      pr.relations = verify_frame_relations(fr, shape.cubic, c_tilde);
      for (const auto& [name, value] : pr.relations) v["frame." + name] = value;
      const ClosedFormSpectrum cf = closed_form_spectrum(split->n1, split->n2, c_tilde);
      double dev = 0.0;
      for (std::size_t k = 0; k < fr.lambda.size(); ++k) {
        dev = std::max(dev, std::abs(fr.lambda[k] - cf.lambda[k]));
        if (fr.mu[k] && cf.mu[k]) dev = std::max(dev, std::abs(*fr.mu[k] - *cf.mu[k]));
      }
      v["spectral.closed_form"] = dev;
      pr.lambda = fr.lambda;
      pr.mu = fr.mu;
      pr.epsilon = fr.epsilon;
      pr.stationarity = fr.stationarity;
    }
  } catch (const Error& e) {
    const bool skip = e.code() == ErrorCode::degenerate_parametrization ||
                      e.code() == ErrorCode::argument;
    pr.status = skip ? PointResult::Status::skipped : PointResult::Status::error;
    pr.code = to_string(e.code());
    pr.message = e.what();
    pr.values.clear();
  }
  return pr;
}

std::vector<PointResult> evaluate_all(const AuditConfig& cfg, const Immersion& im) {
  std::vector<std::vector<double>> points;
  for (int i = 0; i < cfg.sample_count; ++i) {
    StreamRng rng(cfg.seed, static_cast<std::uint64_t>(i));
    points.push_back(im.sample_point(rng));
  }
  for (const auto& p : cfg.points) points.push_back(p);

  std::vector<PointResult> results(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++)
      results[i] = evaluate_point(cfg, im, static_cast<int>(i), points[i]);
  };
  const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(points.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace

// ---------------------------------------------------------------- config

const std::vector<std::string>& Tolerances::names() {
  static const std::vector<std::string> n = {"lift",        "shape",        "minimality",
                                             "third_order", "fourth_order", "spectral"};
  return n;
}

double& Tolerances::tier(const std::string& name) {
  if (name == "lift") return lift;
  if (name == "shape") return shape;
  if (name == "minimality") return minimality;
  if (name == "third_order") return third_order;
  if (name == "fourth_order") return fourth_order;
  if (name == "spectral") return spectral;
  fail(ErrorCode::validation, "unknown tolerance tier '" + name + "'");
}

double Tolerances::tier(const std::string& name) const {
  return const_cast<Tolerances*>(this)->tier(name);
}

const char* to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "markdown"; }

std::optional<OutputFormat> parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "markdown") return OutputFormat::markdown;
  return std::nullopt;
}

void AuditConfig::validate() const {
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(ErrorCode::validation, e.what());
  }
  if (sample_count < 0 || (sample_count == 0 && points.empty()))
    fail(ErrorCode::validation, "sample_count must be >= 1");
  if (jet_order != 3 && jet_order != 4) fail(ErrorCode::validation, "jet_order must be 3 or 4");
  for (const auto& n : Tolerances::names())
    if (!(tolerances.tier(n) > 0.0))
      fail(ErrorCode::validation, "tolerance '" + n + "' must be positive");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != spec.dimension())
      fail(ErrorCode::validation, "explicit point has the wrong dimension");
  if (workers < 1) fail(ErrorCode::validation, "workers must be >= 1");
}

AuditConfig parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string("$: malformed JSON: ") + e.what());
  }
  AuditConfig cfg;
  cfg.spec = parse_immersion(doc, "$", true);
  Reader r(doc, "$");
  if (auto v = r.integer("sample_count")) {
    if (*v < 1) fail(ErrorCode::validation, "$.sample_count: must be >= 1");
    if (*v > 100000000) fail(ErrorCode::validation, "$.sample_count: too large");
    cfg.sample_count = static_cast<int>(*v);
  }
  if (r.has("seed")) {
    const json& s = r.raw("seed");
    if (s.is_number_unsigned())
      cfg.seed = s.get<std::uint64_t>();
    else if (s.is_number_integer() && s.get<long long>() >= 0)
      cfg.seed = static_cast<std::uint64_t>(s.get<long long>());
    else
      fail(ErrorCode::parse, "$.seed: expected a non-negative integer");
  }
  if (auto v = r.integer("jet_order")) cfg.jet_order = small_int(*v, "$.jet_order");
  if (auto v = r.string("output_format")) {
    const auto f = parse_format(*v);
    if (!f) fail(ErrorCode::parse, "$.output_format: expected json or markdown");
    cfg.output_format = *f;
  }
  if (r.has("tolerances")) {
    Reader t(r.raw("tolerances"), "$.tolerances");
    for (auto it = r.raw("tolerances").begin(); it != r.raw("tolerances").end(); ++it) {
      const auto& names = Tolerances::names();
      if (std::find(names.begin(), names.end(), it.key()) == names.end())
        fail(ErrorCode::parse, t.field(it.key()) + ": unknown key");
      if (!it.value().is_number()) fail(ErrorCode::parse, t.field(it.key()) + ": expected a number");
      cfg.tolerances.tier(it.key()) = it.value().get<double>();
    }
  }
  if (const json* a = r.array("points")) {
    for (std::size_t i = 0; i < a->size(); ++i) {
      const std::string p = "$.points[" + std::to_string(i) + "]";
      if (!(*a)[i].is_array()) fail(ErrorCode::parse, p + ": expected an array");
      std::vector<double> pt;
      for (const auto& x : (*a)[i]) {
        if (!x.is_number()) fail(ErrorCode::parse, p + ": expected numbers");
        pt.push_back(x.get<double>());
      }
      cfg.points.push_back(std::move(pt));
    }
  }
  cfg.validate();
  return cfg;
}

nlohmann::json spec_to_json(const ImmersionSpec& s) {
  json j = json::object();
  j["kind"] = to_string(s.kind);
  j["c_tilde"] = s.c_tilde;
  switch (s.kind) {
    case ImmersionKind::product_eq381:
      j["n1"] = s.n1;
      j["n2"] = s.n2;
      j["n"] = s.n1 + s.n2;
      j["sphere_chart"] = s.sphere_chart;
      break;
    case ImmersionKind::real_sphere:
      j["n"] = s.n;
      j["sphere_chart"] = s.sphere_chart;
      break;
    case ImmersionKind::totally_geodesic:
    case ImmersionKind::flat_torus: j["n"] = s.n; break;
    default: break;
  }
  if (!s.sign_choices.empty()) j["sign_choices"] = s.sign_choices;
  if (s.constants) {
    json c = {{"r1", s.constants->r1}, {"r2", s.constants->r2}};
    if (s.constants->omega1) {
      c["omega1"] = *s.constants->omega1;
      c["omega2"] = *s.constants->omega2;
    } else {
      c["a"] = s.constants->a;
    }
    j["constants"] = c;
  }
  if (!s.factors.empty()) {
    j["factors"] = json::array();
    for (const auto& f : s.factors) j["factors"].push_back(spec_to_json(f));
  }
  if (s.split) j["split"] = {s.split->n1, s.split->n2};
  if (s.sphere_rotation) {
    json rows = json::array();
    for (int i = 0; i < s.sphere_rotation->rows(); ++i) {
      json row = json::array();
      for (int k = 0; k < s.sphere_rotation->cols(); ++k) row.push_back((*s.sphere_rotation)(i, k));
      rows.push_back(row);
    }
    j["sphere_rotation"] = rows;
  }
  return j;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

VerificationReport run_audit(const AuditConfig& config) {
  config.validate();
  const ImmersionPtr im = make_immersion(config.spec);
  VerificationReport rep;
  rep.config = config;
  rep.description = im->describe();
  rep.dimension = im->dimension();
  rep.ambient_dim = im->ambient_dim();
  rep.split = config.spec.factor_split();

  const std::vector<PointResult> results = evaluate_all(config, *im);

  std::vector<const PointResult*> ok;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const PointResult& r = results[i];
    switch (r.status) {
      case PointResult::Status::ok: ok.push_back(&r); break;
      case PointResult::Status::skipped:
        rep.skipped.push_back({static_cast<int>(i), r.point, r.code + ": " + r.message});
        break;
      case PointResult::Status::error:
        rep.errors.push_back({static_cast<int>(i), r.point, r.code, r.message});
        break;
    }
  }
  rep.evaluated = static_cast<int>(ok.size());
  auto index_of = [&](const PointResult* p) { return static_cast<int>(p - results.data()); };

  for (const CheckDef& d : check_defs(config)) {
    CheckResult c;
    c.name = d.name;
    c.tier = d.tier;
    c.tolerance = config.tolerances.tier(d.tier);
    c.applicable = d.applicable;
    double sum = 0.0;
    for (const PointResult* p : ok) {
      const auto it = p->values.find(d.name);
      if (it == p->values.end()) continue;
      const double v = it->second;
      sum += v;
      if (c.count == 0 || v > c.max || std::isnan(v)) {
        if (c.count == 0 || !std::isnan(c.max)) {
          c.max = v;
          c.argmax = index_of(p);
          c.argmax_point = p->point;
        }
      }
      ++c.count;
    }
    c.mean = c.count ? sum / c.count : 0.0;
    c.passed = !c.applicable || (c.count > 0 && c.max <= c.tolerance);
    rep.checks.push_back(std::move(c));
  }

  if (rep.split && !ok.empty()) {
    SectionalProfile agg{};
    std::vector<double> c1, c2, mx;
    for (const PointResult* p : ok) {
      c1.push_back(p->profile->c1_estimate);
      c2.push_back(p->profile->c2_estimate);
      mx.push_back(p->profile->mixed_estimate);
      agg.c1_deviation = std::max(agg.c1_deviation, p->profile->c1_deviation);
      agg.c2_deviation = std::max(agg.c2_deviation, p->profile->c2_deviation);
      agg.mixed_deviation = std::max(agg.mixed_deviation, p->profile->mixed_deviation);
      agg.c1_planes += p->profile->c1_planes;
      agg.c2_planes += p->profile->c2_planes;
      agg.mixed_planes += p->profile->mixed_planes;
    }
    auto mean_spread = [](const std::vector<double>& xs, double& mean, double& dev) {
      double s = 0.0;
      for (double x : xs) s += x;
      mean = s / xs.size();
      for (double x : xs) dev = std::max(dev, std::abs(x - mean));
    };
    mean_spread(c1, agg.c1_estimate, agg.c1_deviation);
    mean_spread(c2, agg.c2_estimate, agg.c2_deviation);
    mean_spread(mx, agg.mixed_estimate, agg.mixed_deviation);
    agg.max_deviation = std::max({agg.c1_deviation, agg.c2_deviation, agg.mixed_deviation});
    rep.profile = agg;

    const ClosedFormSpectrum cf =
        closed_form_spectrum(rep.split->n1, rep.split->n2, config.spec.c_tilde);
    const PointResult& first = *ok.front();
    for (std::size_t k = 0; k < first.lambda.size(); ++k) {
      SpectralRow row;
      row.stage = static_cast<int>(k + 1);
      double lsum = 0.0, msum = 0.0;
      for (const PointResult* p : ok) {
        lsum += p->lambda[k];
        if (p->mu[k]) msum += *p->mu[k];
        row.stationarity = std::max(row.stationarity, p->stationarity[k]);
      }
      row.lambda = lsum / ok.size();
      if (first.mu[k]) row.mu = msum / ok.size();
      for (const PointResult* p : ok) {
        row.spread = std::max(row.spread, std::abs(p->lambda[k] - row.lambda));
        if (row.mu && p->mu[k]) row.spread = std::max(row.spread, std::abs(*p->mu[k] - *row.mu));
      }
      row.lambda_closed_form = cf.lambda[k];
      row.mu_closed_form = cf.mu[k];
      row.epsilon = first.epsilon[k];
      rep.spectral.push_back(row);
    }

    RelationMap rel;
    for (const PointResult* p : ok)
      for (const auto& [name, value] : p->relations) rel[name] = std::max(rel[name], value);
    ClassifyTolerances ct;
    ct.curvature = config.tolerances.third_order;
    ct.relations = config.tolerances.fourth_order;
    // The closed form of lambda_{1,1} is checked at the spectral tier.
    RelationMap gate = rel;
    if (gate.count("lambda_closed_form") && gate["lambda_closed_form"] <= config.tolerances.spectral)
      gate["lambda_closed_form"] = 0.0;
    try {
      rep.verdict = classify_case(agg, gate, *rep.split, config.spec.c_tilde, ct);
      rep.verdict->constraint_residuals = rel;
    } catch (const Error& e) {
      rep.verdict_error = std::string(to_string(e.code())) + ": " + e.what();
    }
  }

  bool passed = rep.errors.empty() && rep.evaluated > 0;
  for (const auto& c : rep.checks) passed = passed && c.passed;
  if (rep.split) {
    passed = passed && rep.verdict && rep.verdict->label != CaseLabel::inconsistent;
  }
  rep.passed = passed;
  return rep;
}

VerificationReport run_frame(const AuditConfig& config) {
  AuditConfig one = config;
  one.sample_count = 1;
  one.points.clear();
  one.workers = 1;
  return run_audit(one);
}

std::vector<BuiltinAudit> builtin_audits() {
  std::vector<BuiltinAudit> out;
  auto add = [&](std::string name, ImmersionSpec spec) {
    AuditConfig cfg;
    cfg.spec = std::move(spec);
    out.push_back({std::move(name), std::move(cfg)});
  };
  {
    ImmersionSpec s;
    s.kind = ImmersionKind::totally_geodesic;
    s.n = 3;
    s.c_tilde = 0.0;
    add("totally_geodesic_n3", s);
  }
  for (int n : {1, 2, 3, 5}) {
    ImmersionSpec s;
    s.kind = ImmersionKind::flat_torus;
    s.n = n;
    add("flat_torus_n" + std::to_string(n), s);
  }
  for (auto [n1, n2] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {1, 3}, {3, 2}, {2, 3}}) {
    ImmersionSpec s;
    s.kind = ImmersionKind::product_eq381;
    s.n1 = n1;
    s.n2 = n2;
    s.n = n1 + n2;
    add("product_" + std::to_string(n1) + "_" + std::to_string(n2), s);
  }
  ImmersionSpec sphere2;
  sphere2.kind = ImmersionKind::real_sphere;
  sphere2.n = 2;
  {
    ImmersionSpec s;
    s.kind = ImmersionKind::calabi_point_product;
    s.factors = {sphere2};
    add("calabi_real_sphere_2", s);
  }
  {
    ImmersionSpec circle;
    circle.kind = ImmersionKind::real_sphere;
    circle.n = 1;
    ImmersionSpec s;
    s.kind = ImmersionKind::warped_product;
    s.factors = {circle, circle};
    s.constants = minimal_warping_constants(1, 1);
    add("warped_real_spheres_1_1", s);
  }
  {
    ImmersionSpec s;
    s.kind = ImmersionKind::real_sphere;
    s.n = 3;
    add("real_sphere_3", s);
  }
  return out;
}

}  // namespace minlag
