#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lpgroup/error.hpp"
#include "lpgroup/serialize.hpp"
#include "suite/suite.hpp"

using namespace lpgroup;

namespace {

constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitBudget = 4;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Malformed, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Malformed, path + ": " + e.what());
  }
}

struct Options {
  std::uint64_t seed = suite::kDefaultSeed;
  double tol = 1e-12;
  double p = 0.0;  // 0: take the exponent from the input
  std::size_t starts = 8;
  std::string out;
};

void emit(const json& j, const Options& opt) {
  if (opt.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream file(opt.out);
  if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + opt.out);
  file << j.dump(2) << '\n';
}

FiniteGroup make_group(const std::string& family, const std::vector<std::string>& params) {
  auto size_param = [&](std::size_t i) -> std::size_t {
    if (i >= params.size()) throw Error(ErrorKind::InvalidArgument, family + " needs a size parameter");
    return std::stoul(params[i]);
  };
  if (family == "cyclic") return make_cyclic(size_param(0));
  if (family == "dihedral") return make_dihedral(size_param(0));
  if (family == "symmetric") return make_symmetric(size_param(0));
  if (family == "quaternion") return make_quaternion();
  if (family == "klein") return make_direct_product(make_cyclic(2), make_cyclic(2));
  if (family == "product") {
    if (params.size() != 2) throw Error(ErrorKind::InvalidArgument, "product needs two group files");
    return make_direct_product(group_from_json(read_json(params[0])), group_from_json(read_json(params[1])));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family " + family);
}

std::pair<LampertiForm, LpContext> read_form(const std::string& path) {
  const json j = read_json(path);
  if (j.contains("matrix")) {
    const Operator op = operator_from_json(j);
    return {lamperti_decompose(op), op.context};
  }
  return lamperti_from_json(j);
}

Valuation valuation_field(const json& j, const char* key, const FiniteMeasureAlgebra& algebra) {
  if (!j.contains(key)) throw Error(ErrorKind::Malformed, std::string("missing field \"") + key + "\"");
  try {
    return Valuation(algebra, j.at(key).get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Malformed, e.what());
  }
}

double exponent(const Options& opt, double from_input) { return opt.p > 0.0 ? opt.p : from_input; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groups from their L^p convolution algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--seed", opt.seed, "seed for randomized trials")->capture_default_str();
  app.add_option("--tol", opt.tol, "tolerance for measure check-rn")->capture_default_str();
  app.add_option("--p", opt.p, "exponent, overriding the input file");
  app.add_option("--out", opt.out, "write JSON here instead of standard output");
  // run() is set by whichever subcommand fires
  std::function<json()> run;
  bool verdict_failed = false;

  auto* group = app.add_subcommand("group", "finite groups")->require_subcommand(1);
  group->fallthrough();
  std::string family;
  std::vector<std::string> params;
  auto* group_make = group->add_subcommand("make", "cyclic N | dihedral N | symmetric N | quaternion | klein | product A B");
  group_make->fallthrough();
  group_make->add_option("family", family)->required();
  group_make->add_option("params", params);
  group_make->callback([&] { run = [&] { return to_json(make_group(family, params)); }; });
  std::string file_a, file_b;
  auto* group_iso = group->add_subcommand("iso", "isomorphism witness or null");
  group_iso->fallthrough();
  group_iso->add_option("a", file_a)->required();
  group_iso->add_option("b", file_b)->required();
  group_iso->callback([&] {
    run = [&] {
      return to_json(is_isomorphic(group_from_json(read_json(file_a)), group_from_json(read_json(file_b))));
    };
  });

  auto* measure = app.add_subcommand("measure", "finite measure algebras")->require_subcommand(1);
  measure->fallthrough();
  auto* measure_rnd = measure->add_subcommand("rnd", "d sigma / d mu from {\"weights\", \"sigma\"}");
  measure_rnd->fallthrough();
  measure_rnd->add_option("file", file_a)->required();
  measure_rnd->callback([&] {
    run = [&] {
      const json j = read_json(file_a);
      const FiniteMeasureAlgebra algebra = algebra_from_json(j);
      return to_json(rn_derivative(valuation_field(j, "sigma", algebra), Valuation::of(algebra)));
    };
  });
  auto* measure_check = measure->add_subcommand("check-rn", "product and push rules on {\"weights\", \"sigma\", \"rho\", \"phi\"}");
  measure_check->fallthrough();
  measure_check->add_option("file", file_a)->required();
  measure_check->callback([&] {
    run = [&] {
      const json j = read_json(file_a);
      const FiniteMeasureAlgebra algebra = algebra_from_json(j);
      std::vector<std::size_t> images;
      try {
        images = j.at("phi").get<std::vector<std::size_t>>();
      } catch (const json::exception& e) {
        throw Error(ErrorKind::Malformed, e.what());
      }
      if (!is_permutation(images)) throw Error(ErrorKind::Malformed, "phi is not a permutation");
      const ChainRuleReport report =
          rn_chain_rules(Valuation::of(algebra), valuation_field(j, "sigma", algebra), valuation_field(j, "rho", algebra),
                         BooleanAutomorphism(algebra, Permutation(images)));
      json out = to_json(report);
      out["passed"] = report.max_deviation() <= opt.tol;
      verdict_failed = !out["passed"].get<bool>();
      return out;
    };
  });

  auto* isom = app.add_subcommand("isom", "isometries of weighted l^p")->require_subcommand(1);
  isom->fallthrough();
  auto* isom_decompose = isom->add_subcommand("decompose", "operator file to its Lamperti form");
  isom_decompose->fallthrough();
  isom_decompose->add_option("file", file_a)->required();
  isom_decompose->callback([&] {
    run = [&] {
      Operator op = operator_from_json(read_json(file_a));
      if (opt.p > 0.0) op = Operator(LpContext(op.context.algebra(), opt.p), op.matrix);
      return to_json(lamperti_decompose(op), op.context);
    };
  });
  auto* isom_distance = isom->add_subcommand("distance", "closed-form distance and numeric norm bracket");
  isom_distance->fallthrough();
  isom_distance->add_option("a", file_a)->required();
  isom_distance->add_option("b", file_b)->required();
  isom_distance->callback([&] {
    run = [&] {
      const auto [a, ctx] = read_form(file_a);
      const auto [b, ctx_b] = read_form(file_b);
      if (!(ctx.algebra() == ctx_b.algebra()) || ctx.p() != ctx_b.p()) {
        throw Error(ErrorKind::MismatchedAlgebras, "the two forms live on different spaces");
      }
      const Operator diff(ctx, compose(a, ctx).matrix - compose(b, ctx).matrix);
      return json{{"distance", lamperti_distance(a, b, ctx)},
                  {"numeric", to_json(pnorm_estimate(diff, opt.starts, opt.seed))}};
    };
  });

  auto* norm = app.add_subcommand("norm", "certified p-norm bracket of an operator");
  norm->fallthrough();
  norm->add_option("file", file_a)->required();
  norm->add_option("--starts", opt.starts, "random starts for the ascent")->capture_default_str();
  norm->callback([&] {
    run = [&] {
      Operator op = operator_from_json(read_json(file_a));
      if (opt.p > 0.0) op = Operator(LpContext(op.context.algebra(), opt.p), op.matrix);
      return to_json(pnorm_estimate(op, opt.starts, opt.seed));
    };
  });

  auto* algebra = app.add_subcommand("algebra", "convolution algebras")->require_subcommand(1);
  algebra->fallthrough();
  std::string kind = "convolver";
  auto* algebra_build = algebra->add_subcommand("build", "basis of CV_p(G) or PF_p(G) from a group file");
  algebra_build->fallthrough();
  algebra_build->add_option("group", file_a)->required();
  algebra_build->add_option("--kind", kind, "convolver or pseudofunction")
      ->check(CLI::IsMember({"convolver", "pseudofunction"}))
      ->capture_default_str();
  algebra_build->callback([&] {
    run = [&] {
      const ConvolutionContext ctx(group_from_json(read_json(file_a)), exponent(opt, 3.0));
      return to_json(kind == "convolver" ? convolver_algebra(ctx) : pseudofunction_algebra(ctx));
    };
  });
  auto* algebra_unitaries = algebra->add_subcommand("unitaries", "classes of invertible isometries in the span");
  algebra_unitaries->fallthrough();
  algebra_unitaries->add_option("file", file_a)->required();
  algebra_unitaries->callback([&] {
    run = [&] {
      const AlgebraBasis a = algebra_basis_from_json(read_json(file_a));
      json out = json::array();
      for (const auto& u : unitary_group_enumerate(a, exponent(opt, a.p()))) out.push_back(to_json(u));
      return out;
    };
  });

  auto* recover = app.add_subcommand("recover", "recover the group from an algebra file");
  recover->fallthrough();
  recover->add_option("file", file_a)->required();
  recover->callback([&] {
    run = [&] {
      const AlgebraBasis a = algebra_basis_from_json(read_json(file_a));
      return to_json(recover_group(a, exponent(opt, a.p())));
    };
  });

  auto* decide = app.add_subcommand("decide", "decide isometric (anti-)isomorphism of two algebra files");
  decide->fallthrough();
  decide->add_option("a", file_a)->required();
  decide->add_option("b", file_b)->required();
  decide->callback([&] {
    run = [&] {
      const AlgebraBasis a = algebra_basis_from_json(read_json(file_a));
      const AlgebraBasis b = algebra_basis_from_json(read_json(file_b));
      return to_json(decide_isomorphism(a, a.p(), b, b.p()));
    };
  });

  auto* demo = app.add_subcommand("demo", "demonstrations")->require_subcommand(1);
  demo->fallthrough();
  auto* demo_p2 = demo->add_subcommand("p2", "Z4 and Z2 x Z2 cannot be told apart at p = 2");
  demo_p2->fallthrough();
  demo_p2->callback([&] {
    run = [&] {
      const DegeneracyReport report = p2_degeneracy_demo(100, opt.seed);
      verdict_failed = !report.passed;
      return to_json(report);
    };
  });

  auto* suite_cmd = app.add_subcommand("suite", "acceptance suite")->require_subcommand(1);
  suite_cmd->fallthrough();
  auto* suite_run = suite_cmd->add_subcommand("run", "run every acceptance criterion");
  suite_run->fallthrough();
  suite_run->callback([&] {
    run = [&] {
      json rows = json::array();
      bool all = true;
      for (const auto& r : suite::run_all(opt.seed)) {
        std::cerr << suite::format_line(r) << '\n';
        rows.push_back({{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        all = all && r.passed;
      }
      verdict_failed = !all;
      return json{{"seed", opt.seed}, {"criteria", rows}, {"passed", all}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    emit(run(), opt);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Malformed:
        return kExitMalformed;
      case ErrorKind::Budget:
        return kExitBudget;
      default:
        return kExitVerdict;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerdict;
  }
  return verdict_failed ? kExitVerdict : 0;
}
