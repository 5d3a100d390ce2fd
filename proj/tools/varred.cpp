#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include "varred/fixtures.hpp"
#include "varred/io.hpp"
#include "varred/lie.hpp"
#include "varred/reduction.hpp"
#include "varred/varequations.hpp"

using namespace varred;
namespace fs = std::filesystem;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kPrecondition = 3,
  kUnsupported = 4,
  kTimeLimit = 5,
  kVerifyFailed = 6,
};

void arm_watchdog(double minutes) {
  if (minutes <= 0) return;
  std::thread([minutes] {
    std::this_thread::sleep_for(std::chrono::duration<double, std::ratio<60>>(minutes));
    std::fputs("error: time limit exceeded (--max-minutes)\n", stderr);
    std::fflush(stderr);
    std::_Exit(kTimeLimit);
  }).detach();
}

HamiltonianSpec load_hamiltonian(const std::string& path, const std::string& fixture) {
  if (!fixture.empty()) {
    if (fixture != "henon-heiles") throw PreconditionError("unknown fixture '" + fixture + "'");
    return fixtures::henon_heiles();
  }
  if (path.empty()) throw PreconditionError("a Hamiltonian file or --fixture is required");
  return parse_hamiltonian_file(read_file(path), path);
}

GaugeMatrix load_p1(const std::string& path, const std::string& fixture) {
  if (!fixture.empty()) {
    if (fixture != "henon-heiles") throw PreconditionError("unknown P1 fixture '" + fixture + "'");
    return fixtures::hh_P1();
  }
  if (path.empty()) throw PreconditionError("reduce needs --p1 <file> or --p1-fixture henon-heiles");
  return GaugeMatrix(parse_system_file(read_file(path), path).matrix);
}

void emit(const std::string& out_dir, const std::string& name, const std::string& content) {
  if (out_dir.empty()) {
    std::cout << content;
    return;
  }
  fs::create_directories(out_dir);
  const std::string path = (fs::path(out_dir) / name).string();
  write_file(path, content);
  std::cout << "wrote " << path << "\n";
}

int cmd_build_lve(const std::string& ham, const std::string& fixture, std::size_t order, const std::string& out) {
  auto spec = load_hamiltonian(ham, fixture);
  auto systems = build_lve(spec, order);
  for (const auto& s : systems) {
    SystemFile f;
    f.variable = spec.variable;
    f.matrix = s.matrix;
    if (s.tail > 0) f.blocks = std::make_pair(s.top, s.tail);
    emit(out, "lve_order" + std::to_string(s.order) + ".sys", render_system_file(f));
  }
  return kOk;
}

// Splits an order-m system into its nested bottom-right blocks of orders 1..m.
std::vector<BlockSystem> nested_systems(const SystemFile& f, std::size_t N) {
  const std::size_t D = f.matrix.rows();
  std::size_t m = 0;
  while (lve_dimension(N, m + 1) < D) ++m;
  ++m;
  if (lve_dimension(N, m) != D)
    throw PreconditionError("system dimension " + std::to_string(D) + " is not a variational dimension for N = " +
                            std::to_string(N));
  if (m > 1) {
    const std::size_t tail = lve_dimension(N, m - 1);
    if (!f.blocks) throw PreconditionError("block metadata ('blocks:') is required for systems of order > 1");
    if (f.blocks->first != D - tail || f.blocks->second != tail)
      throw PreconditionError("declared blocks " + std::to_string(f.blocks->first) + " " +
                              std::to_string(f.blocks->second) + " do not match order " + std::to_string(m) +
                              " (expected " + std::to_string(D - tail) + " " + std::to_string(tail) + ")");
  }
  std::vector<BlockSystem> out;
  for (std::size_t k = 1; k <= m; ++k) {
    BlockSystem b;
    b.order = k;
    const std::size_t dk = lve_dimension(N, k);
    b.matrix = f.matrix.block(D - dk, D - dk, dk, dk);
    b.tail = k > 1 ? lve_dimension(N, k - 1) : 0;
    b.top = dk - b.tail;
    if (b.tail > 0 && !is_block_lower_triangular(b.matrix, b.top))
      throw PreconditionError("order " + std::to_string(k) + " block is not block lower triangular");
    b.gauge = GaugeMatrix::identity(dk);
    out.push_back(std::move(b));
  }
  return out;
}

int cmd_reduce(const std::string& sys_path, const std::string& p1_path, const std::string& p1_fixture,
               const std::string& out, const std::string& format) {
  auto f = parse_system_file(read_file(sys_path), sys_path);
  auto P1 = load_p1(p1_path, p1_fixture);
  auto reports = reduce_lve(nested_systems(f, P1.size()), P1);
  for (const auto& r : reports) {
    if (out.empty() && r.order != reports.back().order) continue;
    std::string body =
        format == "structured" ? render_report_structured(r, f.variable) : render_report_text(r, f.variable);
    emit(out, "order" + std::to_string(r.order) + (format == "structured" ? ".report" : ".txt"), body);
  }
  return kOk;
}

int cmd_lie(const std::string& sys_path) {
  auto f = parse_system_file(read_file(sys_path), sys_path);
  auto wn = wei_norman(f.matrix);
  std::vector<ConstMat> gens;
  for (const auto& t : wn.terms) gens.push_back(t.mat);
  auto basis = lie_closure(gens);
  auto ab = is_abelian(basis);
  std::cout << "wei-norman-terms: " << wn.terms.size() << "\n";
  for (std::size_t i = 0; i < wn.terms.size(); ++i)
    std::cout << "coefficient " << i + 1 << ": " << wn.terms[i].coeff.to_string(f.variable) << "\n";
  std::cout << "lie-dimension: " << basis.dim() << "\n";
  std::cout << "abelian: " << (ab.abelian ? "true" : "false") << "\n";
  if (ab.witness) std::cout << "witness: " << ab.witness->first + 1 << " " << ab.witness->second + 1 << "\n";
  return kOk;
}

int cmd_verify_fixture(const std::string& dir) {
  bool ok = true;
  auto check = [&](const std::string& what, bool pass) {
    std::cout << (pass ? "ok   " : "FAIL ") << what << "\n";
    ok = ok && pass;
  };
  for (const auto& name : fixtures::names()) {
    bool parsed = true;
    try {
      if (name.ends_with(".sys")) parse_system_file(fixtures::text(name), name);
    } catch (const Error&) {
      parsed = false;
    }
    check("parse " + name, parsed);
    if (!dir.empty()) {
      const auto path = (fs::path(dir) / name).string();
      check("on-disk copy " + path, fs::exists(path) && read_file(path) == fixtures::text(name));
    }
  }
  auto spec = fixtures::henon_heiles();
  check("Henon-Heiles particular solution", solution_residual_failures(spec.H, spec.n, spec.solution).empty());
  auto A1 = build_lve(spec, 1).front().matrix;
  check("first variational equation equals hh_A1.sys", A1 == fixtures::hh_A1());
  check("P1[A1] equals hh_A1R.sys", apply_gauge(fixtures::hh_P1(), A1) == fixtures::hh_A1R());
  check("hh_A1R.sys equals (5/(3x)) hh_D1.sys", fixtures::hh_A1R() == scale(fixtures::hh_D1(), fixtures::hh_A1R_coefficient()));
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduction of higher variational equations of polynomial Hamiltonian systems"};
  app.require_subcommand(1);
  app.fallthrough();
  double max_minutes = 0;
  app.add_option("--max-minutes", max_minutes, "Abort with exit code 5 after this many minutes")
      ->check(CLI::NonNegativeNumber);

  std::string ham, fixture, out, sys, p1, p1_fixture, report = "text", dir;
  std::size_t order = 1;

  auto* b = app.add_subcommand("build-lve", "Write the linearized variational systems of orders 1..m");
  b->add_option("hamiltonian", ham, "Hamiltonian file");
  b->add_option("--fixture", fixture, "Use a shipped Hamiltonian (henon-heiles)");
  b->add_option("--order", order, "Order m")->check(CLI::PositiveNumber);
  b->add_option("--out", out, "Output directory (default: stdout)");

  auto* r = app.add_subcommand("reduce", "Reduce a variational system and report the Lie algebra");
  r->add_option("system", sys, "System file")->required();
  auto* p1_opt = r->add_option("--p1", p1, "Gauge file reducing the first variational equation");
  r->add_option("--p1-fixture", p1_fixture, "Shipped first-order gauge (henon-heiles)")->excludes(p1_opt);
  r->add_option("--out", out, "Output directory for one report per order (default: stdout, top order only)");
  r->add_option("--report", report, "Report format")->check(CLI::IsMember({"text", "structured"}));

  auto* l = app.add_subcommand("lie", "Wei-Norman decomposition and Lie closure of a system");
  l->add_option("system", sys, "System file")->required();

  auto* v = app.add_subcommand("verify-fixture", "Check the shipped fixture data");
  v->add_option("--dir", dir, "Also compare against the files in this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  arm_watchdog(max_minutes);

  try {
    if (b->parsed()) return cmd_build_lve(ham, fixture, order, out);
    if (r->parsed()) return cmd_reduce(sys, p1, p1_fixture, out, report);
    if (l->parsed()) return cmd_lie(sys);
    if (v->parsed()) return cmd_verify_fixture(dir);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  }
  return kUsage;
}
