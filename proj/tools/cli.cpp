#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dlap/degenfun.hpp"
#include "dlap/errors.hpp"
#include "dlap/expr.hpp"
#include "dlap/numlap.hpp"
#include "dlap/sexpr.hpp"
#include "dlap/symlap.hpp"
#include "dlap/verify.hpp"

namespace dlap::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string expr;
  double lambda = 0.0;
  double t = 0.0;
  std::optional<double> s;
  std::string method = "beta";
  bool numeric = false;
  double tol = 1e-10;
  std::optional<double> verify_tol;
  std::string check;
  bool all = false;
  bool json = false;
};

json number(double v) { return round9(v); }

int cmd_eval(const Options& o, std::ostream& out) {
  const Lambda lambda(o.lambda);
  if (!(o.t >= 0.0)) throw DomainError("t must be >= 0");
  const double v = eval_at(parse(o.expr), lambda, o.t);
  if (o.json) {
    out << json{{"expr", o.expr}, {"lambda", number(o.lambda)}, {"t", number(o.t)},
                {"value", number(v)}}.dump()
        << "\n";
  } else {
    out << format9(v) << "\n";
  }
  return kOk;
}

int cmd_gamma(const Options& o, std::ostream& out) {
  const Lambda lambda(o.lambda);
  const double s = *o.s;
  double value = 0.0;
  std::optional<double> error;
  if (o.method == "beta") {
    value = deg_gamma(lambda, s);
  } else if (o.method == "quadrature") {
    const QuadratureResult r = num_deg_gamma(lambda, s, {o.tol});
    value = r.value;
    error = r.abs_error_estimate;
  } else {
    if (s != std::floor(s) || s < 1.0 || s > 1e6) {
      throw DomainError("method product needs an integer s >= 1");
    }
    if (!lambda.classical() && !(s < 1.0 / lambda.value())) {
      throw DomainError("degenerate gamma needs 0 < s < 1/lambda");
    }
    value = deg_gamma_int(lambda, static_cast<int>(s));
  }
  if (o.json) {
    json j{{"lambda", number(o.lambda)}, {"s", number(s)}, {"method", o.method},
           {"value", number(value)}};
    j["abs_error_estimate"] = error ? number(*error) : json(nullptr);
    out << j.dump() << "\n";
  } else {
    out << format9(value) << "\n";
    if (error) out << "abs_error_estimate: " << format9(*error) << "\n";
  }
  return kOk;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

int cmd_transform(const Options& o, std::ostream& out) {
  const Lambda lambda(o.lambda);
  const Expr f = parse(o.expr);

  if (o.numeric) {
    if (!o.s) throw DomainError("--numeric needs --s");
    const ExponentialOrderBound bound = estimate_order(f, lambda);
    const QuadratureResult r = num_transform(f, lambda, *o.s, {o.tol});
    const double sigma = bound.C + lambda.value();
    if (o.json) {
      out << json{{"closed_form", ""}, {"sigma_min", number(sigma)}, {"trace", {"quadrature"}},
                  {"value", number(r.value)}, {"abs_error_estimate", number(r.abs_error_estimate)}}
                 .dump()
          << "\n";
    } else {
      out << "value: " << format9(r.value) << "\n"
          << "abs_error_estimate: " << format9(r.abs_error_estimate) << "\n"
          << "sigma_min: " << format9(sigma) << "\n"
          << "trace: quadrature\n";
    }
    return kOk;
  }

  const TransformResult tr = transform(f, lambda);
  std::optional<double> value;
  if (o.s) {
    if (!(*o.s > tr.sigma_min)) {
      throw DivergenceError("transform diverges for s <= sigma_min = " + format9(tr.sigma_min));
    }
    value = sexpr_eval(tr.closed_form, lambda, *o.s);
  }
  if (o.json) {
    json j{{"closed_form", to_string(tr.closed_form)}, {"sigma_min", number(tr.sigma_min)},
           {"trace", tr.trace}};
    if (value) j["value"] = number(*value);
    out << j.dump() << "\n";
  } else {
    out << "closed_form: " << to_string(tr.closed_form) << "\n"
        << "sigma_min: " << format9(tr.sigma_min) << "\n"
        << "trace: " << join(tr.trace, ", ") << "\n";
    if (value) out << "value: " << format9(*value) << "\n";
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.all == !o.check.empty()) {
    err << "error: verify needs exactly one of --check ID or --all\n";
    return kParse;
  }
  std::vector<CheckReport> reports;
  if (o.all) {
    reports = run_all(o.verify_tol);
  } else {
    CheckParams params;
    params.tol = o.verify_tol;
    reports = run_check(o.check, params);
  }
  if (o.json) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      std::string status = r.passed ? "PASS" : "FAIL";
      if (r.informational) status += " (informational)";
      char line[128];
      std::snprintf(line, sizeof line, "%-13s %5zu  %-16s %s", r.check_id.c_str(), r.grid.size(),
                    std::isfinite(r.max_rel_error) ? format9(r.max_rel_error).c_str() : "inf",
                    status.c_str());
      out << line << "\n";
    }
  }
  return all_passed(reports) ? kOk : kFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Degenerate Laplace transform and degenerate gamma function"};
  app.require_subcommand(1);

  auto add_lambda = [&](CLI::App* sub) {
    sub->add_option("--lambda", o.lambda, "degeneracy parameter (>= 0)")->required();
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate an expression at t");
  eval->add_option("--expr", o.expr, "expression in t")->required();
  add_lambda(eval);
  eval->add_option("--t", o.t, "point t >= 0")->required();
  eval->add_flag("--json", o.json);

  CLI::App* gamma = app.add_subcommand("gamma", "degenerate gamma function");
  add_lambda(gamma);
  gamma->add_option("--s", o.s, "argument, 0 < s < 1/lambda")->required();
  gamma->add_option("--method", o.method, "beta, quadrature or product")
      ->check(CLI::IsMember({"beta", "quadrature", "product"}));
  gamma->add_option("--tol", o.tol, "quadrature tolerance");
  gamma->add_flag("--json", o.json);

  CLI::App* transform = app.add_subcommand("transform", "degenerate Laplace transform");
  transform->add_option("--expr", o.expr, "expression in t")->required();
  add_lambda(transform);
  transform->add_option("--s", o.s, "evaluate at s");
  transform->add_flag("--numeric", o.numeric, "use quadrature instead of the rule table");
  transform->add_option("--tol", o.tol, "quadrature tolerance");
  transform->add_flag("--json", o.json);

  CLI::App* verify = app.add_subcommand("verify", "run identity checks");
  verify->add_option("--check", o.check, "check id");
  verify->add_flag("--all", o.all, "run every check");
  verify->add_option("--tol", o.verify_tol, "override every check tolerance");
  verify->add_flag("--json", o.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kParse;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (gamma->parsed()) return cmd_gamma(o, out);
    if (transform->parsed()) return cmd_transform(o, out);
    return cmd_verify(o, out, err);
  } catch (const ParseError& e) {
    err << "error: parse error " << e.what() << "\n";
    return kParse;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const UnsupportedShape& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const UnknownCheckId& e) {
    err << "error: " << e.what() << "\n";
    return kUnknownCheck;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace dlap::cli
