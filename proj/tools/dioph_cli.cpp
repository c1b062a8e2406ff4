// dioph: command-line front end.
//
// Exit codes: 0 ok / COMPLETE, 1 failure, 2 PARTIAL certificate,
// 3 ASSUMED items under --strict, 64 malformed arguments.

#include "dioph/certificate.hpp"
#include "dioph/harness.hpp"
#include "dioph/lucas.hpp"
#include "dioph/pell.hpp"
#include "dioph/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kUsage = 64;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

dioph::Integer number(const std::string& s, const char* what) {
  try {
    return dioph::parse_integer(s);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(what) + ": not an integer: '" + s + "'");
  }
}

std::uint64_t natural(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  if (!dioph::fits_u64(number(s, what), v)) throw UsageError(std::string(what) + ": out of range: '" + s + "'");
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and certificate checker for (a^n - 1)(b^n - 1) = x^2"};
  app.require_subcommand(1);

  std::string a_s, b_s, d_s, p_s, q_s, n_s, mod_s, hyp_s, nmax_s = "30", amax_s = "100", bmax_s = "100";
  std::string config_path, out_path, cert_path;
  bool strict = false, no_structural = false;

  auto* search = app.add_subcommand("search", "List every n <= nmax with a square target");
  search->add_option("a", a_s)->required();
  search->add_option("b", b_s)->required();
  search->add_option("--nmax", nmax_s, "largest exponent (default 30)");

  auto* prove = app.add_subcommand("prove", "Run gates and the covering sieve, write a certificate");
  prove->add_option("a", a_s)->required();
  prove->add_option("b", b_s)->required();
  prove->add_option("--config", config_path, "sieve configuration (JSON)");
  prove->add_option("--out", out_path, "certificate path")->required();
  prove->add_flag("--no-structural-gates", no_structural, "skip pair-specific gates");

  auto* verify = app.add_subcommand("verify", "Re-check a certificate");
  verify->add_option("certificate", cert_path)->required();
  verify->add_flag("--strict", strict, "exit 3 when any item is only assumed");

  auto* pell = app.add_subcommand("pell", "Fundamental solution of x^2 - d y^2 = 1");
  pell->add_option("d", d_s)->required();
  pell->add_option("--hyp", hyp_s, "instead solve d u^2 - b v^2 = 1 with this b");

  auto* lucas = app.add_subcommand("lucas", "U_n(P,Q) and V_n(P,Q)");
  lucas->add_option("P", p_s)->required();
  lucas->add_option("Q", q_s)->required();
  lucas->add_option("n", n_s)->required();
  lucas->add_option("--mod", mod_s, "reduce modulo m");

  auto* scan = app.add_subcommand("scan", "Search all 2 <= a < b <= bmax");
  scan->add_option("--amax", amax_s);
  scan->add_option("--bmax", bmax_s);
  scan->add_option("--nmax", nmax_s);

  auto* replay = app.add_subcommand("replay", "Replay the solved pairs and their congruence facts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*search) {
      const auto a = number(a_s, "a"), b = number(b_s, "b");
      if (!(1 < a && a < b)) throw UsageError("search requires 1 < a < b");
      for (const auto& h : dioph::search_pair(a, b, natural(nmax_s, "--nmax")))
        std::cout << "n=" << h.n() << " x=" << h.x().get_str() << '\n';
      return 0;
    }

    if (*prove) {
      const auto a = number(a_s, "a"), b = number(b_s, "b");
      if (!(1 < a && a < b)) throw UsageError("prove requires 1 < a < b");
      dioph::SieveConfig config;
      if (!config_path.empty()) config = dioph::sieve_config_from_json(nlohmann::json::parse(slurp(config_path)));
      if (no_structural) config.structural_gates = false;
      const auto cert = dioph::sieve(dioph::Pair::make(a, b), config);
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      out << dioph::serialize_certificate(cert);
      std::cout << dioph::to_string(cert.status) << ": " << cert.known_solutions.size() << " known solution(s), "
                << cert.gate_steps.size() << " gate step(s), " << cert.sieve_classes.size() << " witness class(es), "
                << cert.surviving_classes.size() << " surviving class(es)\n";
      return cert.status == dioph::CertificateStatus::Complete ? 0 : 2;
    }

    if (*verify) {
      dioph::Certificate cert;
      try {
        cert = dioph::parse_certificate(slurp(cert_path));
      } catch (const dioph::MalformedCertificate& e) {
        std::cout << "FAIL parse: " << e.what() << '\n';
        return 1;
      }
      const auto report = dioph::verify_certificate(cert);
      std::cout << dioph::format_report(report);
      if (!report.passed()) return 1;
      return strict && report.has_assumed() ? 3 : 0;
    }

    if (*pell) {
      const auto d = number(d_s, "d");
      if (!hyp_s.empty()) {
        const auto m = dioph::minimal_hyp_solution(d, number(hyp_s, "--hyp"));
        if (!m) {
          std::cout << "no solution\n";
          return 0;
        }
        std::cout << "u1=" << m->u1.get_str() << " v1=" << m->v1.get_str() << " P=" << m->P.get_str() << '\n';
        return 0;
      }
      const auto f = dioph::pell_fundamental(d);
      std::cout << "x1=" << f.x1.get_str() << " y1=" << f.y1.get_str() << '\n';
      return 0;
    }

    if (*lucas) {
      const dioph::LucasParams params(number(p_s, "P"), number(q_s, "Q"));
      const auto n = number(n_s, "n");
      if (n < 0) throw UsageError("n must be non-negative");
      if (!mod_s.empty()) {
        const auto [u, v] = dioph::lucas_uv_mod(params, n, number(mod_s, "--mod"));
        std::cout << "U=" << u.get_str() << " V=" << v.get_str() << '\n';
        return 0;
      }
      const auto r = dioph::lucas_uv(params, natural(n_s, "n"));
      std::cout << "U=" << r.U.get_str() << " V=" << r.V.get_str() << '\n';
      return 0;
    }

    if (*scan) {
      std::cout << dioph::format_hits(
          dioph::scan(natural(amax_s, "--amax"), natural(bmax_s, "--bmax"), natural(nmax_s, "--nmax")));
      return 0;
    }

    if (*replay) {
      const auto report = dioph::replay_solved_pairs();
      std::cout << dioph::format_replay(report);
      return report.passed() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
