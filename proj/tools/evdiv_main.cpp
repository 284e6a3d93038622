// evdiv: constructs and verifies evenly divisible rational approximations
// P/Q of quadratic irrationalities, and explores minimal gaps in the
// associated billiard spectrum {alpha m^2 + n^2}.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "evdiv/certificate_io.hpp"
#include "evdiv/construct.hpp"
#include "evdiv/errors.hpp"
#include "evdiv/numtheory.hpp"
#include "evdiv/pell.hpp"
#include "evdiv/qfield.hpp"
#include "evdiv/spectrum.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

mpfr_prec_t default_precision_bits() {
    if (const char* env = std::getenv("EVDIV_PRECISION_BITS")) {
        long v = std::atol(env);
        if (v >= 64) return static_cast<mpfr_prec_t>(v);
    }
    return 192;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty() || output_path == "-") {
        std::cout << text << "\n";
    } else {
        std::ofstream out(output_path);
        if (!out) throw std::runtime_error("cannot open output file: " + output_path);
        out << text << "\n";
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

evdiv::QuadElem parse_alpha(const std::string& alpha_str, const std::string& d_str) {
    evdiv::FieldDesc field{mpz_class(d_str)};
    return evdiv::parse_quad(alpha_str, field);
}

json real_json(const std::string& value, mpfr_prec_t bits) {
    return json{{"value", value}, {"precision_bits", static_cast<long>(bits)}};
}

json block_json(const evdiv::PrimeBlock& block) {
    json primes = json::array();
    for (const auto& p : block.primes) primes.push_back(p.get_str());
    return json{{"primes", primes},
                {"product", block.product.get_str()},
                {"ratio", evdiv::format_rational(block.totient_ratio)}};
}

json verify_report_json(const evdiv::VerifyReport& report) {
    json j;
    j["pass"] = report.all_pass();
    j["checks"] = {{"approx", report.checks.approx},
                   {"split_P", report.checks.split_P},
                   {"split_Q", report.checks.split_Q},
                   {"q_magnitude", report.checks.q_magnitude}};
    if (report.small_n) j["small_n"] = true;
    if (!report.detail.empty()) j["detail"] = report.detail;
    return j;
}

void warn_block_budget(const evdiv::ApproxCertificate& cert, const mpz_class& budget) {
    if (cert.params.L * cert.params.Lp > budget) {
        std::cerr << "warning: L*L' = " << cert.params.L * cert.params.Lp
                  << " exceeds the cost budget " << budget
                  << "; powers of this size are expensive\n";
    }
}

void print_explain(const evdiv::ApproxCertificate& cert) {
    auto diag = evdiv::explain_certificate(cert);
    auto side = [](const char* name, const evdiv::TraceFactorization& f,
                   const evdiv::MagnitudeReport& m) {
        std::cerr << name << ": L=" << f.L.get_str() << (f.twisted ? " twisted" : "")
                  << "\n  phi = " << f.phi_part.get_str() << "\n  psi = " << f.psi_part.get_str()
                  << "\n  magnitude ratios (pass=" << (m.pass ? "yes" : "no")
                  << "): total=" << m.total_ratio << " phi=" << m.phi_ratio
                  << " psi=" << m.psi_ratio << "\n";
    };
    side("P side", diag.fact_P, diag.mag_P);
    side("Q side", diag.fact_Q, diag.mag_Q);
}

int verify_one(const json& j, bool quiet) {
    evdiv::ApproxCertificate cert = evdiv::certificate_from_json(j.dump());
    evdiv::VerifyReport report = evdiv::verify_certificate(cert);
    if (!quiet) std::cout << verify_report_json(report).dump(2) << "\n";
    return report.all_pass() ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"evenly divisible rational approximations of quadratic irrationalities"};
    app.require_subcommand(1);

    // pell
    std::string pell_d;
    std::string pell_norm = "+1";
    auto* pell_cmd = app.add_subcommand("pell", "fundamental Pell solution for Q[sqrt(D)]");
    pell_cmd->add_option("--D", pell_d, "square-free D >= 2")->required();
    pell_cmd->add_option("--norm", pell_norm, "+1 or -1 (default +1)");

    // select-primes
    std::string sp_eps;
    std::string sp_budget = "10000000";
    auto* sp_cmd = app.add_subcommand("select-primes", "greedy disjoint odd prime blocks");
    sp_cmd->add_option("--eps", sp_eps, "rational eps in (0, 1/2)")->required();
    sp_cmd->add_option("--budget", sp_budget, "warn when L*L' exceeds this");

    // construct
    std::string c_alpha, c_d, c_eps, c_mode = "symmetric", c_output;
    bool c_explain = false;
    auto* c_cmd = app.add_subcommand("construct", "build an evenly divisible certificate");
    c_cmd->add_option("--alpha", c_alpha, "element of Q[sqrt(D)], e.g. \"3+2*sqrt(2)\"")
        ->required();
    c_cmd->add_option("--D", c_d, "square-free D >= 2")->required();
    c_cmd->add_option("--eps", c_eps, "rational eps in (0, 1/2)")->required();
    c_cmd->add_option("--mode", c_mode, "symmetric | twisted-p | twisted-q");
    c_cmd->add_option("--output,-o", c_output, "output file (default stdout)");
    c_cmd->add_flag("--explain", c_explain, "print factorization diagnostics to stderr");

    // strong
    std::string s_alpha, s_d, s_from, s_to, s_output;
    auto* s_cmd = app.add_subcommand("strong", "strongly divisible certificates (square class)");
    s_cmd->add_option("--alpha", s_alpha)->required();
    s_cmd->add_option("--D", s_d)->required();
    s_cmd->add_option("--n-from", s_from)->required();
    s_cmd->add_option("--n-to", s_to)->required();
    s_cmd->add_option("--output,-o", s_output, "output file (default stdout)");

    // verify
    std::string v_cert;
    bool v_quiet = false;
    auto* v_cmd = app.add_subcommand("verify", "re-verify a certificate file");
    v_cmd->add_option("--cert", v_cert, "certificate JSON (object or array)")->required();
    v_cmd->add_flag("--quiet", v_quiet, "suppress the report, use the exit code only");

    // spectrum
    std::string sm_alpha, sm_d, sm_checkpoints, sm_format = "csv", sm_output;
    std::size_t sm_levels = 0;
    long sm_precision = 0;
    int sm_workers = 1;
    auto* sm_cmd = app.add_subcommand("spectrum", "minimal gaps of {alpha m^2 + n^2}");
    sm_cmd->add_option("--alpha", sm_alpha)->required();
    sm_cmd->add_option("--D", sm_d)->required();
    sm_cmd->add_option("--levels", sm_levels, "number of levels N")->required();
    sm_cmd->add_option("--checkpoints", sm_checkpoints, "comma-separated N values");
    sm_cmd->add_option("--precision-bits", sm_precision, "working precision (>= 64)");
    sm_cmd->add_option("--workers", sm_workers, "worker threads for level generation");
    sm_cmd->add_option("--format", sm_format, "csv | json");
    sm_cmd->add_option("--output,-o", sm_output, "output file (default stdout)");

    // decompose
    std::string d_alpha, d_d;
    auto* d_cmd = app.add_subcommand("decompose", "square-class test and A*alpha = beta^2");
    d_cmd->add_option("--alpha", d_alpha)->required();
    d_cmd->add_option("--D", d_d)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (pell_cmd->parsed()) {
            int want = (pell_norm == "-1") ? -1 : +1;
            if (pell_norm != "+1" && pell_norm != "1" && pell_norm != "-1") {
                throw std::invalid_argument("--norm must be +1 or -1");
            }
            evdiv::PellSolution s = evdiv::fundamental_unit_solution(mpz_class(pell_d), want);
            json j{{"x", s.x.get_str()},
                   {"y", s.y.get_str()},
                   {"D", s.D.get_str()},
                   {"norm", s.norm}};
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }

        if (sp_cmd->parsed()) {
            evdiv::BlockPair bp =
                evdiv::select_blocks(evdiv::parse_rational(sp_eps), mpz_class(sp_budget));
            if (bp.budget_exceeded) {
                std::cerr << "warning: L*L' = " << bp.L.product * bp.Lp.product
                          << " exceeds the cost budget " << sp_budget << "\n";
            }
            json j{{"L", block_json(bp.L)}, {"Lprime", block_json(bp.Lp)}};
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }

        if (c_cmd->parsed()) {
            evdiv::QuadElem alpha = parse_alpha(c_alpha, c_d);
            evdiv::ConstructMode mode = evdiv::construct_mode_from_string(c_mode);
            if (mode == evdiv::ConstructMode::Strong) {
                throw std::invalid_argument("use the `strong` subcommand for strong mode");
            }
            evdiv::ConstructOptions opts;
            evdiv::ApproxCertificate cert =
                mode == evdiv::ConstructMode::Symmetric
                    ? evdiv::symmetric_construct(alpha, evdiv::parse_rational(c_eps), opts)
                    : evdiv::twisted_construct(alpha, evdiv::parse_rational(c_eps),
                                               mode == evdiv::ConstructMode::TwistedP
                                                   ? evdiv::TwistedSide::P
                                                   : evdiv::TwistedSide::Q,
                                               opts);
            warn_block_budget(cert, opts.block_budget);
            if (c_explain) print_explain(cert);
            emit(evdiv::certificate_to_json(cert), c_output);
            if (!cert.checks.all()) {
                std::cerr << "verification failed for the emitted certificate\n";
                return kExitVerifyFailure;
            }
            return kExitOk;
        }

        if (s_cmd->parsed()) {
            evdiv::QuadElem alpha = parse_alpha(s_alpha, s_d);
            auto certs =
                evdiv::strong_sequence(alpha, mpz_class(s_from), mpz_class(s_to));
            json arr = json::array();
            bool all_ok = true;
            for (const auto& cert : certs) {
                arr.push_back(json::parse(evdiv::certificate_to_json(cert, false)));
                all_ok = all_ok && cert.checks.all();
            }
            emit(arr.dump(2), s_output);
            if (!all_ok) {
                std::cerr << "verification failed for an emitted certificate\n";
                return kExitVerifyFailure;
            }
            return kExitOk;
        }

        if (v_cmd->parsed()) {
            json j = json::parse(read_file(v_cert));
            if (j.is_array()) {
                int rc = kExitOk;
                json reports = json::array();
                for (const auto& item : j) {
                    evdiv::ApproxCertificate cert = evdiv::certificate_from_json(item.dump());
                    evdiv::VerifyReport report = evdiv::verify_certificate(cert);
                    reports.push_back(verify_report_json(report));
                    if (!report.all_pass()) rc = kExitVerifyFailure;
                }
                if (!v_quiet) std::cout << reports.dump(2) << "\n";
                return rc;
            }
            return verify_one(j, v_quiet);
        }

        if (sm_cmd->parsed()) {
            evdiv::QuadElem alpha = parse_alpha(sm_alpha, sm_d);
            evdiv::SpectrumOptions opts;
            opts.precision_bits = sm_precision > 0 ? sm_precision : default_precision_bits();
            if (opts.precision_bits < 64) {
                throw std::invalid_argument("--precision-bits must be >= 64");
            }
            opts.workers = sm_workers;
            std::vector<std::size_t> checkpoints;
            if (sm_checkpoints.empty()) {
                checkpoints.push_back(sm_levels);
            } else {
                std::stringstream ss(sm_checkpoints);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    checkpoints.push_back(static_cast<std::size_t>(std::stoull(item)));
                }
            }
            if (checkpoints.empty() || checkpoints.back() > sm_levels) {
                throw std::invalid_argument("checkpoints must be within --levels");
            }
            evdiv::ProfileResult profile = evdiv::min_gap_profile(alpha, checkpoints, opts);

            if (sm_format == "csv") {
                std::ostringstream out;
                out << "N,delta_min,i,m1,n1,m2,n2,lambda_i,lambda_next\n";
                for (const auto& cp : profile.checkpoints) {
                    out << cp.N << "," << cp.delta_min.str() << "," << cp.argmin.index << ","
                        << cp.argmin.m1.get_str() << "," << cp.argmin.n1.get_str() << ","
                        << cp.argmin.m2.get_str() << "," << cp.argmin.n2.get_str() << ","
                        << cp.argmin.lambda_i.str() << "," << cp.argmin.lambda_next.str();
                    out << "\n";
                }
                std::string s = out.str();
                s.pop_back();
                emit(s, sm_output);
            } else if (sm_format == "json") {
                json arr = json::array();
                mpfr_prec_t used = profile.precision_used;
                for (const auto& cp : profile.checkpoints) {
                    arr.push_back(
                        {{"N", cp.N},
                         {"delta_min", real_json(cp.delta_min.str(), used)},
                         {"i", cp.argmin.index},
                         {"pair",
                          {{"m1", cp.argmin.m1.get_str()},
                           {"n1", cp.argmin.n1.get_str()},
                           {"m2", cp.argmin.m2.get_str()},
                           {"n2", cp.argmin.n2.get_str()}}},
                         {"lambda_i", real_json(cp.argmin.lambda_i.str(), used)},
                         {"lambda_next", real_json(cp.argmin.lambda_next.str(), used)}});
                }
                json j{{"alpha", evdiv::format_quad(alpha)},
                       {"D", alpha.field().D().get_str()},
                       {"precision_bits", static_cast<long>(used)},
                       {"checkpoints", arr}};
                emit(j.dump(2), sm_output);
            } else {
                throw std::invalid_argument("--format must be csv or json");
            }
            return kExitOk;
        }

        if (d_cmd->parsed()) {
            evdiv::QuadElem alpha = parse_alpha(d_alpha, d_d);
            bool in_class = evdiv::square_class_test(alpha);
            json j{{"alpha", evdiv::format_quad(alpha)},
                   {"D", alpha.field().D().get_str()},
                   {"in_class", in_class},
                   {"norm", evdiv::format_rational(alpha.norm())},
                   {"trace", evdiv::format_rational(alpha.trace())}};
            if (in_class) {
                evdiv::SquareDecomposition dec = evdiv::square_decompose(alpha);
                j["A"] = dec.A.get_str();
                j["beta"] = evdiv::format_quad(dec.beta);
            }
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }
    } catch (const evdiv::UndecidableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
    return kExitUsage;
}
