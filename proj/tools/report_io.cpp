#include "report_io.hpp"

#include "darcy/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace darcy::io {

using nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

namespace {

double log10_or_nan(double v) { return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN(); }

ordered_json rate_to_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double rate_from_json(const ordered_json &j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw InvalidArgument("bad rate value '" + s + "'");
  }
  return j.get<double>();
}

} // namespace

void write_csv(std::ostream &os, const StudyResult &study) {
  os << "method,l,k,nx,h";
  for (ErrorNorm n : kAllNorms) os << ',' << norm_name(n);
  os << ",neg_log10_h";
  for (ErrorNorm n : kAllNorms) os << ",log10_" << norm_name(n);
  os << '\n';
  for (const StudyTable &t : study.tables) {
    for (const RunResult &r : t.runs) {
      os << method_name(t.method) << ',' << t.degrees.l << ',' << t.degrees.k << ',' << r.nx << ','
         << format_number(r.errors.h);
      for (ErrorNorm n : kAllNorms) os << ',' << format_number(r.errors.value(n));
      os << ',' << format_number(-std::log10(r.errors.h));
      for (ErrorNorm n : kAllNorms) os << ',' << format_number(log10_or_nan(r.errors.value(n)));
      os << '\n';
    }
  }
  for (const StudyTable &t : study.tables) {
    if (t.table.rows.size() < 2) continue;
    for (ErrorNorm n : kAllNorms) {
      const NormRate &rate = t.table.rate(n);
      os << "#rate," << method_name(t.method) << ',' << t.degrees.l << ',' << t.degrees.k << ',' << norm_name(n)
         << ',' << format_number(rate.pairwise) << ',' << format_number(rate.slope) << '\n';
    }
  }
}

ordered_json to_json(const StudyResult &study) {
  ordered_json doc;
  doc["case"] = study.case_label;
  ordered_json tables = ordered_json::array();
  for (const StudyTable &t : study.tables) {
    ordered_json jt;
    jt["method"] = method_name(t.method);
    jt["l"] = t.degrees.l;
    jt["k"] = t.degrees.k;
    ordered_json rows = ordered_json::array();
    for (const RunResult &r : t.runs) {
      ordered_json jr;
      jr["nx"] = r.nx;
      jr["h"] = r.errors.h;
      for (ErrorNorm n : kAllNorms) jr[std::string(norm_name(n))] = r.errors.value(n);
      jr["velocity_dofs"] = r.errors.velocity_dofs;
      jr["potential_dofs"] = r.errors.potential_dofs;
      jr["system_size"] = r.system_size;
      jr["relative_residual"] = r.stats.relative_residual;
      jr["potential_mean"] = r.stats.potential_mean;
      jr["backend"] = r.stats.backend;
      ordered_json disks = ordered_json::array();
      for (const ExclusionDisk &d : r.errors.exclusions) disks.push_back({d.center.x, d.center.y, d.radius});
      jr["exclusions"] = disks;
      rows.push_back(std::move(jr));
    }
    jt["rows"] = std::move(rows);
    ordered_json rates = ordered_json::object();
    if (t.table.rows.size() >= 2) {
      for (ErrorNorm n : kAllNorms) {
        const NormRate &rate = t.table.rate(n);
        rates[std::string(norm_name(n))] = {{"pairwise", rate_to_json(rate.pairwise)},
                                            {"slope", rate_to_json(rate.slope)}};
      }
    }
    jt["rates"] = std::move(rates);
    tables.push_back(std::move(jt));
  }
  doc["tables"] = std::move(tables);
  ordered_json failures = ordered_json::array();
  for (const RunFailure &f : study.failures) {
    failures.push_back({{"method", method_name(f.method)},
                        {"l", f.degrees.l},
                        {"k", f.degrees.k},
                        {"nx", f.nx},
                        {"message", f.message}});
  }
  doc["failures"] = std::move(failures);
  return doc;
}

StudyResult study_from_json(const ordered_json &doc) {
  try {
    StudyResult study;
    study.case_label = doc.at("case").get<std::string>();
    for (const auto &jt : doc.at("tables")) {
      StudyTable t;
      t.method = parse_method(jt.at("method").get<std::string>());
      t.degrees = {jt.at("l").get<int>(), jt.at("k").get<int>()};
      for (const auto &jr : jt.at("rows")) {
        RunResult r;
        r.method = t.method;
        r.degrees = t.degrees;
        r.nx = jr.at("nx").get<int>();
        r.errors.h = jr.at("h").get<double>();
        r.errors.eL2_u = jr.at("eL2_u").get<double>();
        r.errors.eH1semi_u = jr.at("eH1semi_u").get<double>();
        r.errors.eDiv_u = jr.at("eDiv_u").get<double>();
        r.errors.eRotLambda_u = jr.at("eRotLambda_u").get<double>();
        r.errors.eL2_p = jr.at("eL2_p").get<double>();
        r.errors.eH1semi_p = jr.at("eH1semi_p").get<double>();
        r.errors.velocity_dofs = jr.at("velocity_dofs").get<int>();
        r.errors.potential_dofs = jr.at("potential_dofs").get<int>();
        r.system_size = jr.at("system_size").get<int>();
        r.stats.relative_residual = jr.at("relative_residual").get<double>();
        r.stats.potential_mean = jr.at("potential_mean").get<double>();
        r.stats.backend = jr.at("backend").get<std::string>();
        for (const auto &d : jr.at("exclusions")) {
          r.errors.exclusions.push_back({{d.at(0).get<double>(), d.at(1).get<double>()}, d.at(2).get<double>()});
        }
        t.table.rows.push_back({r.nx, r.errors.h, r.errors});
        t.runs.push_back(std::move(r));
      }
      const auto &rates = jt.at("rates");
      for (ErrorNorm n : kAllNorms) {
        const auto it = rates.find(std::string(norm_name(n)));
        if (it == rates.end()) continue;
        t.table.rates[static_cast<std::size_t>(n)] = {rate_from_json(it->at("pairwise")),
                                                      rate_from_json(it->at("slope"))};
      }
      study.tables.push_back(std::move(t));
    }
    for (const auto &jf : doc.at("failures")) {
      study.failures.push_back({parse_method(jf.at("method").get<std::string>()),
                                {jf.at("l").get<int>(), jf.at("k").get<int>()},
                                jf.at("nx").get<int>(),
                                jf.at("message").get<std::string>()});
    }
    return study;
  } catch (const nlohmann::json::exception &e) {
    throw InvalidArgument(std::string("malformed study document: ") + e.what());
  }
}

void write_json(std::ostream &os, const StudyResult &study) { os << to_json(study).dump(2) << '\n'; }

void write_fields(std::ostream &os, const DiscreteSolution &solution) {
  os << "x y u1 u2 p\n";
  const auto prec = os.precision(12);
  for (const Point2 &x : solution.mesh().nodes()) {
    const FieldValues f = solution.evaluate(x);
    os << x.x << ' ' << x.y << ' ' << f.u.x << ' ' << f.u.y << ' ' << f.p << '\n';
  }
  os.precision(prec);
}

} // namespace darcy::io
