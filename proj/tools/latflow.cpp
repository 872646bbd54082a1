#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latflow/cf.hpp"
#include "latflow/critical.hpp"
#include "latflow/dani.hpp"
#include "latflow/errors.hpp"
#include "latflow/experiments.hpp"
#include "latflow/flow.hpp"
#include "latflow/hyperbolic.hpp"
#include "latflow/lattice.hpp"
#include "latflow/norms.hpp"
#include "latflow/serialize.hpp"

namespace {

using namespace latflow;

// Data goes to stdout unless --out names a file; diagnostics go to stderr.
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

HalfPlanePoint parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("point must be given as \"x,y\"");
    size_t used1 = 0, used2 = 0;
    HalfPlanePoint z;
    const std::string xs = text.substr(0, comma), ys = text.substr(comma + 1);
    try {
        z.x = std::stod(xs, &used1);
        z.y = std::stod(ys, &used2);
    } catch (const std::exception&) {
        throw std::invalid_argument("point coordinates must be numbers");
    }
    if (used1 != xs.size() || used2 != ys.size() || ys.empty())
        throw std::invalid_argument("point coordinates must be numbers");
    return z;
}

std::string format_check(const std::string& norm_text) {
    return norm_text.empty() ? std::string("euclidean") : norm_text;
}

int run(int argc, char** argv) {
    CLI::App app{"Planar-lattice Dirichlet-improvability laboratory"};
    app.require_subcommand(1);

    std::string norm_text = R"({"kind":"euclidean"})";
    std::string psi_text, basis_text, out_path, z_text, format = "csv";
    double alpha = 0.0, s_max = 20.0, s_lo = 0.0, grid_step = 0.01;
    int trace = 0, grid = 720, n_samples = 0, depth = 0, count = 101;
    int m = 1, n = 1;
    double dani_smax = -1.0;
    std::uint64_t seed = 0;
    std::vector<double> windows;
    std::vector<std::string> psi_list;
    std::vector<long long> k_list;

    auto* c_critical = app.add_subcommand(
        "critical", "Critical determinant of a planar norm ball; optionally trace the "
                    "minimizing hexagon family as CSV");
    c_critical->add_option("--norm", norm_text,
                           "norm descriptor, inline JSON or a file path (default euclidean)")
        ->capture_default_str();
    c_critical->add_option("--trace", trace, "emit a CSV locus sweep with this many anchor angles")
        ->check(CLI::Range(1, 1000000));
    c_critical->add_option("--grid", grid, "anchor-angle grid size for the minimization")
        ->capture_default_str()
        ->check(CLI::Range(8, 100000));
    c_critical->add_option("--out", out_path, "output file (default stdout)");

    auto* c_delta = app.add_subcommand(
        "delta", "Normalized shortest-vector length delta of a lattice under a norm");
    c_delta->add_option("--basis", basis_text,
                        "square matrix as row-major JSON; its columns generate the lattice")
        ->required();
    c_delta->add_option("--norm", norm_text, "norm descriptor (default euclidean)")
        ->capture_default_str();

    auto* c_check = app.add_subcommand(
        "check", "Scan one trajectory for target hits up to --smax; JSON report");
    c_check->add_option("--alpha", alpha, "number whose approximations are tested")->required();
    c_check->add_option("--psi", psi_text, "rate spec, e.g. scaled:c=0.9, loggap:k=2")->required();
    c_check->add_option("--norm", norm_text, "norm descriptor (default euclidean)")
        ->capture_default_str();
    c_check->add_option("--smax", s_max, "flow-time horizon")->capture_default_str();
    c_check->add_option("--slo", s_lo, "scan start (clamped up to the rate's start time)")
        ->capture_default_str();
    c_check->add_option("--step", grid_step, "initial grid step")->capture_default_str();
    c_check->add_option("--out", out_path, "output file (default stdout)");

    auto* c_reduce = app.add_subcommand(
        "reduce", "Reduce an upper-half-plane point into the standard fundamental domain");
    c_reduce->add_option("--z", z_text, "point as \"x,y\" with y > 0")->required();

    auto* c_locate = app.add_subcommand(
        "locate", "Reduced half-plane point of a planar lattice, its delta, and its "
                  "distance to the corner orbit");
    c_locate->add_option("--basis", basis_text,
                         "2x2 matrix as row-major JSON; columns generate the lattice, det +-1")
        ->required();

    auto* c_dani = app.add_subcommand(
        "dani", "Tabulate the flow-time rate function r(s) of a rate spec as CSV");
    c_dani->add_option("--psi", psi_text, "rate spec")->required();
    c_dani->add_option("--m", m, "number of expanding directions")->capture_default_str();
    c_dani->add_option("--n", n, "number of contracting directions")->capture_default_str();
    c_dani->add_option("--smax", dani_smax, "table end (default: start + 10)");
    c_dani->add_option("--count", count, "number of grid rows")
        ->capture_default_str()
        ->check(CLI::Range(2, 10000000));
    c_dani->add_option("--out", out_path, "output file (default stdout)");

    auto* c_zeroone = app.add_subcommand(
        "zeroone", "Monte-Carlo hit fractions over windows [S, 2S] of flow time");
    c_zeroone->add_option("--psi", psi_text, "rate spec")->required();
    c_zeroone->add_option("--n", n_samples, "number of sampled alpha")
        ->required()
        ->check(CLI::Range(1, 100000000));
    c_zeroone->add_option("--windows", windows, "window start times, e.g. 10,20,40")
        ->required()
        ->delimiter(',');
    c_zeroone->add_option("--seed", seed, "RNG seed")->required();
    c_zeroone->add_option("--format", format, "csv or json")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    c_zeroone->add_option("--out", out_path, "output file (default stdout)");

    auto* c_counter = app.add_subcommand(
        "counterexample", "Construct an alpha whose trajectory re-enters the shrinking "
                          "target at every stage; JSON certificate");
    c_counter->add_option("--psi", psi_text, "rate spec with r(s) bounded away from 1")
        ->required();
    c_counter->add_option("--depth", depth, "number of stages")
        ->required()
        ->check(CLI::Range(0, 1000));
    c_counter->add_option("--out", out_path, "output file (default stdout)");

    auto* c_table = app.add_subcommand(
        "table", "Partial-sum table of the improvability series over psi x K as CSV");
    c_table->add_option("--psi", psi_list, "rate specs (repeat or comma-separate)")
        ->required()
        ->delimiter(',');
    c_table->add_option("--K", k_list, "partial-sum cutoffs, e.g. 100,10000")
        ->required()
        ->delimiter(',');
    c_table->add_option("--out", out_path, "output file (default stdout)");

    c_critical->callback([&] {
        const NormDescriptor norm = norm_from_text(norm_text);
        if (trace > 0) {
            emit(locus_to_csv(trace_critical_locus(norm, trace)), out_path);
            return;
        }
        emit(csv_double(critical_determinant(norm, grid).value), out_path);
    });

    c_delta->callback([&] {
        const NormDescriptor norm = norm_from_text(norm_text);
        const Lattice lat = Lattice::from_basis(basis_from_json(nlohmann::json::parse(
            basis_text, nullptr, false)));
        std::cout << csv_double(delta(lat, norm, resolve_critical_constant(norm))) << '\n';
    });

    c_check->callback([&] {
        const NormDescriptor norm = norm_from_text(norm_text);
        CheckReport report;
        report.alpha = alpha;
        report.psi = psi_from_string(psi_text);
        report.s_max = s_max;
        report.hits = dirichlet_hits(AlphaCF::from_double(alpha), report.psi, norm,
                                     resolve_critical_constant(norm), s_lo, s_max, grid_step);
        emit(check_to_json(report).dump(2), out_path);
        std::cerr << "norm: " << format_check(norm_text) << ", hits: " << report.hits.size()
                  << '\n';
    });

    c_reduce->callback([&] {
        const ReductionResult red = reduce(parse_point(z_text));
        std::cout << csv_double(red.z.x) << ',' << csv_double(red.z.y) << '\n'
                  << red.word << '\n';
    });

    c_locate->callback([&] {
        const Lattice lat = Lattice::from_basis(basis_from_json(nlohmann::json::parse(
            basis_text, nullptr, false)));
        const ReductionResult red = point_of_lattice(lat);
        std::cout << "z = " << csv_double(red.z.x) << ',' << csv_double(red.z.y) << '\n'
                  << "word = " << red.word << '\n'
                  << "delta = " << csv_double(delta_from_height(red.z.y)) << '\n'
                  << "distance_to_critical = " << csv_double(distance_to_critical(lat)) << '\n';
    });

    c_dani->callback([&] {
        const PsiSpec psi = psi_from_string(psi_text, m, n);
        const RateFunction rate = dani_transform(psi);
        const double hi = dani_smax < 0.0 ? rate.s_start + 10.0 : dani_smax;
        if (!(hi > rate.s_start))
            throw std::invalid_argument("--smax must exceed the rate's start time");
        std::ostringstream out;
        out << "s,t,r,psi_id,classification\n";
        const std::string psi_id = psi_to_string(psi);
        const std::string cls =
            psi.m == 1 && psi.n == 1 ? series_class_name(classify_series(psi)) : "unknown";
        for (int i = 0; i < count; ++i) {
            const double s = rate.s_start + (hi - rate.s_start) * i / (count - 1);
            out << csv_double(s) << ',' << csv_double(rate.t_of_s(s)) << ','
                << csv_double(rate.eval(s)) << ',' << psi_id << ',' << cls << '\n';
        }
        emit(out.str(), out_path);
    });

    c_zeroone->callback([&] {
        const ZeroOneReport report =
            zero_one_experiment(psi_from_string(psi_text), n_samples, windows, seed);
        emit(format == "json" ? zeroone_to_json(report).dump(2) : zeroone_to_csv(report),
             out_path);
    });

    c_counter->callback([&] {
        const CounterexampleCertificate cert =
            construct_counterexample(psi_from_string(psi_text), depth);
        emit(certificate_to_json(cert).dump(2), out_path);
        if (!cert.complete)
            std::cerr << "warning: enumeration stopped after " << cert.stages.size() << " of "
                      << depth << " stages\n";
    });

    c_table->callback([&] {
        std::vector<PsiSpec> specs;
        specs.reserve(psi_list.size());
        for (const std::string& text : psi_list) specs.push_back(psi_from_string(text));
        emit(condition_table_to_csv(condition_table(specs, k_list)), out_path);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const latflow::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 3;
    }
}
