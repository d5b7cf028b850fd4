#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <regex>

#include <CLI11.hpp>

#include "emit.hpp"
#include "verify.hpp"
#include "shockprof/classification.hpp"
#include "shockprof/equilibria.hpp"
#include "shockprof/errors.hpp"
#include "shockprof/profile.hpp"
#include "shockprof/sweep.hpp"

namespace shockprof::cli {

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::StateOutsideDomain:
    case ErrorCode::EpsilonOutOfRange:
    case ErrorCode::EpsilonAboveHat:
    case ErrorCode::NonPositiveParameter:
    case ErrorCode::QOutOfRange:
    case ErrorCode::ZOutOfRange:
    case ErrorCode::ParamsOutOfOmega:
    case ErrorCode::InvalidOptions:
        return kUsage;
    default:
        return kNumerical;
    }
}

std::string complex_str(std::complex<double> z) {
    std::string s = fmt17(z.real());
    if (z.imag() != 0.0) s += (z.imag() > 0 ? " + " : " - ") + fmt17(std::abs(z.imag())) + "i";
    return s;
}

void require_omega(double eps, double q) {
    if (!(eps > 0.0 && eps <= 1.0 && q > 0.75 && q < 1.0)) {
        throw Error(ErrorCode::ParamsOutOfOmega, "(eps, q) must satisfy 0 < eps <= 1 and 3/4 < q < 1");
    }
}

int cmd_classify(double eps, double q, std::ostream& out) {
    require_omega(eps, q);
    const RegionLabel region = classify(eps, q);
    const EquilibriumPair rest = rest_points(q);
    const Spectrum plus = local_spectrum(rest.psi_plus, eps);
    const Spectrum minus = local_spectrum(rest.psi_minus, eps);
    out << "region: " << to_string(region) << '\n'
        << "eps: " << fmt17(eps) << '\n'
        << "q_tilde: " << fmt17(q) << '\n'
        << "psi_minus: " << fmt17(rest.psi_minus.psi0) << ' ' << fmt17(rest.psi_minus.psi1) << '\n'
        << "psi_plus: " << fmt17(rest.psi_plus.psi0) << ' ' << fmt17(rest.psi_plus.psi1) << '\n'
        << "v_minus_sq: " << fmt17(rest.v_minus_sq) << '\n'
        << "v_plus_sq: " << fmt17(rest.v_plus_sq) << '\n'
        << "p_value: " << fmt17(p_eval(rest.v_plus_sq, eps)) << '\n'
        << "eigenvalues_plus: " << complex_str(plus.lambda1) << ", " << complex_str(plus.lambda2) << '\n'
        << "eigenvalues_minus: " << complex_str(minus.lambda1) << ", " << complex_str(minus.lambda2) << '\n'
        << "q1: " << fmt17(separatrix_q1(eps)) << '\n';
    if (eps < epsilon_hat()) out << "q2: " << fmt17(separatrix_q2(eps)) << '\n';
    return kOk;
}

struct GridSize {
    std::size_t n_eps = 100;
    std::size_t n_q = 100;
};

GridSize parse_grid(const std::string& s) {
    static const std::regex re(R"((\d+)[xX](\d+))");
    std::smatch m;
    if (!std::regex_match(s, m, re)) {
        throw Error(ErrorCode::InvalidOptions, "--grid expects NxM, got '" + s + "'");
    }
    return {std::stoul(m[1].str()), std::stoul(m[2].str())};
}

int cmd_scan(const ScanConfig& cfg, const std::string& format, const std::string& out_path, bool serial,
             std::ostream& out, std::ostream& err) {
    const auto records = serial ? scan_serial(cfg) : scan_parallel(cfg);
    const Separatrices curves = separatrix_polylines(200);

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << out_path << " for writing\n";
            return kIo;
        }
    }
    std::ostream& os = out_path.empty() ? out : file;
    if (format == "csv") {
        write_scan_csv(os, cfg, records, curves);
    } else if (format == "json") {
        write_scan_json(os, cfg, records, curves);
    } else {
        write_scan_svg(os, cfg, records, curves);
    }
    os.flush();
    if (!os) {
        err << "error: write failed\n";
        return kIo;
    }
    return kOk;
}

int cmd_profile(double eps, double q, const ShootOptions& opts, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    require_omega(eps, q);
    const ProfileResult result = shoot(eps, q, opts);
    if (out_path.empty()) {
        write_profile_summary(out, eps, q, result, "# ");
        write_trajectory_csv(out, result);
        return kOk;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open " << out_path << " for writing\n";
        return kIo;
    }
    write_trajectory_csv(file, result);
    file.flush();
    if (!file) {
        err << "error: write failed\n";
        return kIo;
    }
    write_profile_summary(out, eps, q, result, "");
    out << "trajectory: " << out_path << '\n';
    return kOk;
}

int cmd_verify(std::ostream& out) {
    bool ok = true;
    for (const auto& c : run_identity_suite()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", c.max_error);
        out << (c.passed() ? "PASS " : "FAIL ") << c.name << ": max_error=" << buf << " (n=" << c.samples << ")\n";
        ok = ok && c.passed();
    }
    out << (ok ? "all identities hold\n" : "identity failures detected\n");
    return ok ? kOk : kVerifyFailed;
}

int cmd_causality(double eta, double mu, double nu, std::ostream& out) {
    const CausalityVerdict v = causality_check(eta, mu, nu);
    out << "class: " << to_string(v.cls) << '\n';
    if (v.epsilon) out << "eps: " << fmt17(*v.epsilon) << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shock-profile analysis for the sharply causal radiation-fluid model"};
    app.require_subcommand(1);

    double eps = 0.0, q = 0.0;
    double eta = 0.0, mu = 0.0, nu = 0.0;
    std::string grid = "100x100", format = "csv", out_path;
    bool with_shoot = false, serial = false;
    ShootOptions opts;
    double eps_min = eps_floor, eps_max = 1.0, q_min = 0.75 + omega_margin, q_max = 1.0 - omega_margin;

    auto* classify_cmd = app.add_subcommand("classify", "Region, rest points and spectra at one parameter point");
    classify_cmd->add_option("--eps", eps, "Dissipation parameter in (0, 1]")->required();
    classify_cmd->add_option("--q", q, "Shock parameter in (3/4, 1)")->required();

    auto* scan_cmd = app.add_subcommand("scan", "Classify a grid over the parameter square");
    scan_cmd->add_option("--grid", grid, "NxM cells (eps by q)");
    scan_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
    scan_cmd->add_option("--out", out_path, "Output file (default stdout)");
    scan_cmd->add_flag("--shoot", with_shoot, "Also shoot a profile for every cell");
    scan_cmd->add_flag("--serial", serial, "Use the serial reference kernel");
    scan_cmd->add_option("--eps-min", eps_min);
    scan_cmd->add_option("--eps-max", eps_max);
    scan_cmd->add_option("--q-min", q_min);
    scan_cmd->add_option("--q-max", q_max);

    auto* profile_cmd = app.add_subcommand("profile", "Shoot a heteroclinic profile");
    profile_cmd->add_option("--eps", eps, "Dissipation parameter in (0, 1]")->required();
    profile_cmd->add_option("--q", q, "Shock parameter in (3/4, 1)")->required();
    profile_cmd->add_option("--out", out_path, "Trajectory CSV (default stdout)");

    for (auto* cmd : {scan_cmd, profile_cmd}) {
        cmd->add_option("--offset", opts.offset, "Initial offset along the unstable direction (fraction of amplitude)");
        cmd->add_option("--rtol", opts.rel_tol, "Integrator relative tolerance");
        cmd->add_option("--atol", opts.abs_tol, "Integrator absolute tolerance");
    }

    auto* verify_cmd = app.add_subcommand("verify", "Run the sampled identity suite");

    auto* causality_cmd = app.add_subcommand("causality", "Classify a dissipation triple (eta, mu, nu)");
    causality_cmd->add_option("--eta", eta)->required();
    causality_cmd->add_option("--mu", mu)->required();
    causality_cmd->add_option("--nu", nu)->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*classify_cmd) return cmd_classify(eps, q, out);
        if (*scan_cmd) {
            const GridSize g = parse_grid(grid);
            ScanConfig cfg{{eps_min, eps_max, g.n_eps}, {q_min, q_max, g.n_q}, with_shoot, opts};
            return cmd_scan(cfg, format, out_path, serial, out, err);
        }
        if (*profile_cmd) return cmd_profile(eps, q, opts, out_path, out, err);
        if (*verify_cmd) return cmd_verify(out);
        if (*causality_cmd) return cmd_causality(eta, mu, nu, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}

} // namespace shockprof::cli
