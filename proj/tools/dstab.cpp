// dstab: robust stability margin of a polynomial family over a parameter box,
// computed by branch-and-bound on value-set bounds along the region boundary.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dstab/polynomial.hpp"
#include "dstab/problem.hpp"
#include "dstab/region.hpp"
#include "dstab/report.hpp"
#include "dstab/sweep.hpp"

namespace fs = std::filesystem;
using namespace dstab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitIterationCap = 2;
constexpr int kExitNominalUnstable = 3;

constexpr double kMultilinearityTol = 1e-7;

struct CommonOpts {
    std::string problem_path;
    double eps = 0.01;
    int n_r = 30;
    int n_c = 50;
    double dl = 0.0, du = 0.0;
    bool dl_set = false, du_set = false;
    std::int64_t it = 0;
    std::string scheme = "maximal";
    unsigned seed = 0;
    std::string out = ".";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("problem", o.problem_path, "problem file (JSON)")->required();
    cmd->add_option("--eps", o.eps, "relative tolerance");
    cmd->add_option("--nr", o.n_r, "number of sweep branches");
    cmd->add_option("--nc", o.n_c, "steps per branch");
    cmd->add_option("--dl", o.dl, "override: sweep interval lower end")
        ->each([&](const std::string&) { o.dl_set = true; });
    cmd->add_option("--du", o.du, "override: sweep interval upper end")
        ->each([&](const std::string&) { o.du_set = true; });
    cmd->add_option("--it", o.it, "iteration cap per sweep step (0 = unlimited)");
    cmd->add_option("--scheme", o.scheme, "cut scheme: maximal | fair")
        ->check(CLI::IsMember({"maximal", "fair"}));
    cmd->add_option("--seed", o.seed, "seed for sampled vertex paths and probes");
    cmd->add_option("--out", o.out, "output directory");
}

SweepConfig to_config(const CommonOpts& o) {
    SweepConfig cfg;
    cfg.epsilon = o.eps;
    cfg.n_r = o.n_r;
    cfg.n_c = o.n_c;
    if (o.dl_set) cfg.delta_lower = o.dl;
    if (o.du_set) cfg.delta_upper = o.du;
    cfg.max_iter = o.it;
    cfg.scheme = o.scheme == "fair" ? CutScheme::FairCut : CutScheme::MaximalCut;
    cfg.bounds.seed = o.seed;
    return cfg;
}

RunEcho make_echo(const Problem& problem, const SweepConfig& cfg) {
    return RunEcho{problem.name, problem.box.dimension(), problem.box.nominal(),
                   problem.nominal_from_file, cfg};
}

// Validates structure and nominal stability; returns an exit code, 0 if fine.
int preflight(const Problem& problem, unsigned seed) {
    if (!problem.declared_multilinear) {
        std::cerr << "error: the problem must declare 'multilinear': true; the vertex-image\n"
                     "hull bounds are only valid for multilinear families\n";
        return kExitInput;
    }
    if (!verify_multilinearity(problem.poly, problem.box, kMultilinearityTol, seed)) {
        std::cerr << "error: the family is declared multilinear but a second-difference probe\n"
                     "found curvature along a single coordinate\n";
        return kExitInput;
    }
    try {
        if (!nominal_roots_in_region(problem.poly, problem.region, problem.box.nominal())) {
            std::cerr << "error: the nominal polynomial has roots outside the region; the\n"
                         "margin is undefined (exit 3)\n";
            return kExitNominalUnstable;
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
}

int run_margin(const CommonOpts& o) {
    const Problem problem = load_problem(o.problem_path);
    const SweepConfig cfg = to_config(o);
    if (const int rc = preflight(problem, o.seed); rc != kExitOk) return rc;

    fs::create_directories(o.out);
    std::ofstream trace_file(fs::path(o.out) / "margin_trace.csv", std::ios::binary);
    trace_file << "j,i,delta,k_l,k_u,event\n";
    TraceSink sink = [&](const TraceRow& row) {
        trace_file << row.j << ',' << row.i << ',' << format_number(row.delta) << ','
                   << format_number(row.k_l) << ',' << format_number(row.k_u) << ',' << row.event
                   << '\n';
    };

    const SweepReport report = algorithm2(problem.poly, problem.box, problem.region, cfg, sink);

    MarginReportDoc doc{make_echo(problem, cfg), report};
    write_file(fs::path(o.out) / "margin_report.json", serialize_margin_report(doc));

    std::cout << "k_hat = " << format_number(report.k_hat);
    if (report.argmin)
        std::cout << " at delta = " << format_number(report.argmin->delta) << " (piece "
                  << report.argmin->piece << ", branch " << report.argmin->i << ", step "
                  << report.argmin->j << ")";
    std::cout << "\nrecords = " << report.records.size()
              << ", domains evaluated = " << report.domains_evaluated
              << ", splits = " << report.splits << "\nprunes: backward "
              << report.prune_counts.backward << ", forward " << report.prune_counts.forward
              << ", present " << report.prune_counts.present << "\nwall time = "
              << report.wall_seconds << " s\n";
    if (!report.converged) {
        std::cout << "iteration cap reached with " << report.abandoned
                  << " subdomains outstanding; result is an upper estimate only\n";
        return kExitIterationCap;
    }
    return kExitOk;
}

int run_classic(const CommonOpts& o) {
    const Problem problem = load_problem(o.problem_path);
    const SweepConfig cfg = to_config(o);
    if (const int rc = preflight(problem, o.seed); rc != kExitOk) return rc;

    fs::create_directories(o.out);
    std::ofstream trace_file(fs::path(o.out) / "classic_trace.csv", std::ios::binary);
    trace_file << "piece,index,delta,r,k_l,k_u,live\n";
    ClassicTraceSink sink = [&](const ClassicTraceRow& row) {
        trace_file << row.piece << ',' << row.index << ',' << format_number(row.delta) << ','
                   << row.r << ',' << format_number(row.k_l) << ',' << format_number(row.k_u)
                   << ',' << row.live << '\n';
    };

    const ClassicReport report =
        algorithm1(problem.poly, problem.box, problem.region, cfg, o.eps, sink);

    ClassicReportDoc doc{make_echo(problem, cfg), o.eps, report};
    write_file(fs::path(o.out) / "classic_report.json", serialize_classic_report(doc));

    std::cout << "k_tilde_max = " << format_number(report.k_tilde_max);
    if (report.argmin) std::cout << " at delta = " << format_number(report.argmin->delta);
    std::cout << "\ndomains evaluated = " << report.domains_evaluated
              << "\nwall time = " << report.wall_seconds << " s\n";
    return report.all_converged ? kExitOk : kExitIterationCap;
}

int run_valueset(const CommonOpts& o, double delta, double k) {
    const Problem problem = load_problem(o.problem_path);
    if (const int rc = preflight(problem, o.seed); rc != kExitOk) return rc;

    const BoundaryPiece* piece = nullptr;
    for (const auto& p : problem.region.pieces)
        if (delta >= p.delta_lower() && delta <= p.delta_upper()) {
            piece = &p;
            break;
        }
    if (!piece) {
        std::cerr << "error: no region piece sweeps delta = " << delta << "\n";
        return kExitInput;
    }

    const Complex z = piece->sweep_point(delta);
    const VertexImages images =
        value_set_vertex_images(problem.poly, z, problem.box.scaled(k));
    const Hull hull = convex_hull(images.images);

    fs::create_directories(o.out);
    std::ofstream csv(fs::path(o.out) / "valueset.csv", std::ios::binary);
    csv << "kind,index,re,im\n";
    for (std::size_t i = 0; i < images.images.size(); ++i)
        csv << "vertex," << i << ',' << format_number(images.images[i].real()) << ','
            << format_number(images.images[i].imag()) << '\n';
    for (std::size_t i = 0; i < hull.size(); ++i)
        csv << "hull," << hull.source_indices[i] << ',' << format_number(hull.points[i].real())
            << ',' << format_number(hull.points[i].imag()) << '\n';

    std::cout << "z = " << format_number(z.real()) << " + " << format_number(z.imag())
              << "i, " << images.images.size() << " vertex images, hull of " << hull.size()
              << " points\n";
    return kExitOk;
}

int run_compare(const CommonOpts& o) {
    const Problem problem = load_problem(o.problem_path);
    const SweepConfig cfg = to_config(o);
    if (const int rc = preflight(problem, o.seed); rc != kExitOk) return rc;

    const CompareReport cmp =
        compare(problem.poly, problem.box, problem.region, cfg, /*eps_r=*/o.eps);

    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "compare_report.json",
               serialize_compare_report(make_echo(problem, cfg), o.eps, cmp));

    std::cout << "parallel sweep:     k_hat = " << format_number(cmp.k_hat_alg2) << ", domains "
              << cmp.domains_alg2 << ", wall " << cmp.wall_alg2 << " s\n"
              << "conventional sweep: k_m   = " << format_number(cmp.k_tilde_alg1) << ", domains "
              << cmp.domains_alg1 << ", wall " << cmp.wall_alg1 << " s\n"
              << "domain ratio = " << format_number(cmp.ratio)
              << ", speedup = " << format_number(cmp.speedup) << "\n";
    return cmp.alg2_converged && cmp.alg1_converged ? kExitOk : kExitIterationCap;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust stability margin under multilinear parametric uncertainty"};
    app.require_subcommand(1);

    CommonOpts margin_opts, classic_opts, valueset_opts, compare_opts;
    double vs_delta = 0.0;
    double vs_k = 1.0;

    CLI::App* margin = app.add_subcommand("margin", "parallel frequency sweep (global record)");
    add_common(margin, margin_opts);
    CLI::App* classic =
        app.add_subcommand("sweep-classic", "per-frequency convergence, no shared record");
    add_common(classic, classic_opts);
    CLI::App* valueset = app.add_subcommand("valueset", "vertex images and hull at one frequency");
    add_common(valueset, valueset_opts);
    valueset->add_option("--delta", vs_delta, "generalized frequency")->required();
    valueset->add_option("--k", vs_k, "box scale about the nominal point");
    CLI::App* cmp = app.add_subcommand("compare", "run both sweeps on the identical grid");
    add_common(cmp, compare_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitInput;
    }

    try {
        if (margin->parsed()) return run_margin(margin_opts);
        if (classic->parsed()) return run_classic(classic_opts);
        if (valueset->parsed()) return run_valueset(valueset_opts, vs_delta, vs_k);
        if (cmp->parsed()) return run_compare(compare_opts);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
