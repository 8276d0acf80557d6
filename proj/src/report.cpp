#include "dstab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace dstab {

namespace {

constexpr const char* kGridNote =
    "margin certified over the discrete frequency grid only; "
    "the continuum margin may be smaller";

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

void append_grid_point(std::ostringstream& o, const GridPoint& gp) {
    o << "{\"piece\":" << gp.piece << ",\"i\":" << gp.i << ",\"j\":" << gp.j
      << ",\"delta\":" << format_number(gp.delta) << "}";
}

void append_echo(std::ostringstream& o, const RunEcho& e) {
    o << "\"problem\":{\"name\":" << quoted(e.problem_name)
      << ",\"parameters\":" << e.parameter_count << ",\"q0_used\":[";
    for (std::size_t i = 0; i < e.q0_used.size(); ++i) {
        if (i) o << ",";
        o << format_number(e.q0_used[i]);
    }
    o << "],\"q0_source\":" << (e.q0_from_file ? "\"file\"" : "\"box-center-default\"") << "},";
    o << "\"config\":{\"epsilon\":" << format_number(e.cfg.epsilon) << ",\"n_r\":" << e.cfg.n_r
      << ",\"n_c\":" << e.cfg.n_c << ",\"delta_lower\":"
      << (e.cfg.delta_lower ? format_number(*e.cfg.delta_lower) : "null")
      << ",\"delta_upper\":"
      << (e.cfg.delta_upper ? format_number(*e.cfg.delta_upper) : "null")
      << ",\"max_iter\":" << e.cfg.max_iter << ",\"scheme\":"
      << (e.cfg.scheme == CutScheme::MaximalCut ? "\"maximal\"" : "\"fair\"")
      << ",\"seed\":" << e.cfg.bounds.seed << ",\"k_tol\":" << format_number(e.cfg.bounds.k_tol)
      << ",\"k_cap\":" << format_number(e.cfg.bounds.k_cap)
      << ",\"k_step\":" << format_number(e.cfg.bounds.k_step)
      << ",\"geom_tol\":" << format_number(e.cfg.bounds.geom_tol)
      << ",\"path_cap\":" << e.cfg.bounds.path_cap << "}";
}

using nlohmann::json;

double num_from(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        if (s == "nan") return std::nan("");
        throw InputError("unexpected number string '" + s + "' in report");
    }
    return j.get<double>();
}

GridPoint grid_point_from(const json& j) {
    return GridPoint{j.at("piece").get<std::size_t>(), j.at("i").get<int>(),
                     j.at("j").get<int>(), num_from(j.at("delta"))};
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string serialize_margin_report(const MarginReportDoc& doc) {
    const SweepReport& s = doc.sweep;
    std::ostringstream o;
    o << "{\"command\":\"margin\",";
    append_echo(o, doc.echo);
    o << ",\"result\":{";
    o << "\"k_hat\":" << format_number(s.k_hat);
    o << ",\"converged\":" << (s.converged ? "true" : "false");
    o << ",\"zero_margin\":" << (s.zero_margin ? "true" : "false");
    o << ",\"argmin\":";
    if (s.argmin) {
        append_grid_point(o, *s.argmin);
    } else {
        o << "null";
    }
    o << ",\"records\":[";
    for (std::size_t i = 0; i < s.records.size(); ++i) {
        const RecordEntry& r = s.records[i];
        if (i) o << ",";
        o << "{\"value\":" << format_number(r.value) << ",\"freq\":";
        append_grid_point(o, r.freq);
        o << ",\"stamp\":" << r.stamp << ",\"j\":" << r.j << ",\"r\":" << r.r << "}";
    }
    o << "],\"prune_counts\":{\"backward\":" << s.prune_counts.backward
      << ",\"forward\":" << s.prune_counts.forward << ",\"present\":" << s.prune_counts.present
      << "}";
    o << ",\"domains_evaluated\":" << s.domains_evaluated;
    o << ",\"splits\":" << s.splits;
    o << ",\"exact_drops\":" << s.exact_drops;
    o << ",\"no_intersection_drops\":" << s.no_intersection_drops;
    o << ",\"abandoned\":" << s.abandoned;
    o << ",\"iterations_per_step\":[";
    for (std::size_t i = 0; i < s.iterations_per_step.size(); ++i) {
        if (i) o << ",";
        o << s.iterations_per_step[i];
    }
    o << "],\"per_frequency\":[";
    for (std::size_t i = 0; i < s.per_frequency.size(); ++i) {
        const PerFrequencyStats& f = s.per_frequency[i];
        if (i) o << ",";
        o << "{\"freq\":";
        append_grid_point(o, f.freq);
        o << ",\"k_l_min\":" << format_number(f.k_l_min)
          << ",\"k_u_min\":" << format_number(f.k_u_min) << ",\"evaluated\":" << f.evaluated
          << ",\"splits\":" << f.splits << "}";
    }
    o << "],\"note\":" << quoted(kGridNote);
    o << "}}\n";
    return o.str();
}

MarginReportDoc parse_margin_report(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("report parse failed: ") + e.what());
    }

    MarginReportDoc out;
    try {
        const json& p = doc.at("problem");
        out.echo.problem_name = p.at("name").get<std::string>();
        out.echo.parameter_count = p.at("parameters").get<std::size_t>();
        for (const auto& v : p.at("q0_used")) out.echo.q0_used.push_back(num_from(v));
        out.echo.q0_from_file = p.at("q0_source").get<std::string>() == "file";

        const json& c = doc.at("config");
        out.echo.cfg.epsilon = num_from(c.at("epsilon"));
        out.echo.cfg.n_r = c.at("n_r").get<int>();
        out.echo.cfg.n_c = c.at("n_c").get<int>();
        if (!c.at("delta_lower").is_null()) out.echo.cfg.delta_lower = num_from(c.at("delta_lower"));
        if (!c.at("delta_upper").is_null()) out.echo.cfg.delta_upper = num_from(c.at("delta_upper"));
        out.echo.cfg.max_iter = c.at("max_iter").get<std::int64_t>();
        out.echo.cfg.scheme = c.at("scheme").get<std::string>() == "fair" ? CutScheme::FairCut
                                                                          : CutScheme::MaximalCut;
        out.echo.cfg.bounds.seed = c.at("seed").get<unsigned>();
        out.echo.cfg.bounds.k_tol = num_from(c.at("k_tol"));
        out.echo.cfg.bounds.k_cap = num_from(c.at("k_cap"));
        out.echo.cfg.bounds.k_step = num_from(c.at("k_step"));
        out.echo.cfg.bounds.geom_tol = num_from(c.at("geom_tol"));
        out.echo.cfg.bounds.path_cap = c.at("path_cap").get<int>();

        const json& r = doc.at("result");
        out.sweep.k_hat = num_from(r.at("k_hat"));
        out.sweep.converged = r.at("converged").get<bool>();
        out.sweep.zero_margin = r.at("zero_margin").get<bool>();
        if (!r.at("argmin").is_null()) out.sweep.argmin = grid_point_from(r.at("argmin"));
        for (const auto& rec : r.at("records"))
            out.sweep.records.push_back(RecordEntry{num_from(rec.at("value")),
                                                    grid_point_from(rec.at("freq")),
                                                    rec.at("stamp").get<std::uint64_t>(),
                                                    rec.at("j").get<int>(),
                                                    rec.at("r").get<std::int64_t>()});
        const json& pc = r.at("prune_counts");
        out.sweep.prune_counts = {pc.at("backward").get<std::uint64_t>(),
                                  pc.at("forward").get<std::uint64_t>(),
                                  pc.at("present").get<std::uint64_t>()};
        out.sweep.domains_evaluated = r.at("domains_evaluated").get<std::uint64_t>();
        out.sweep.splits = r.at("splits").get<std::uint64_t>();
        out.sweep.exact_drops = r.at("exact_drops").get<std::uint64_t>();
        out.sweep.no_intersection_drops = r.at("no_intersection_drops").get<std::uint64_t>();
        out.sweep.abandoned = r.at("abandoned").get<std::uint64_t>();
        for (const auto& it : r.at("iterations_per_step"))
            out.sweep.iterations_per_step.push_back(it.get<std::int64_t>());
        for (const auto& f : r.at("per_frequency"))
            out.sweep.per_frequency.push_back(PerFrequencyStats{
                grid_point_from(f.at("freq")), num_from(f.at("k_l_min")),
                num_from(f.at("k_u_min")), f.at("evaluated").get<std::uint64_t>(),
                f.at("splits").get<std::uint64_t>()});
    } catch (const json::exception& e) {
        throw InputError(std::string("report is missing fields: ") + e.what());
    }
    return out;
}

std::string serialize_classic_report(const ClassicReportDoc& doc) {
    const ClassicReport& s = doc.report;
    std::ostringstream o;
    o << "{\"command\":\"sweep-classic\",";
    append_echo(o, doc.echo);
    o << ",\"eps_r\":" << format_number(doc.eps_r);
    o << ",\"result\":{";
    o << "\"k_tilde_max\":" << format_number(s.k_tilde_max);
    o << ",\"all_converged\":" << (s.all_converged ? "true" : "false");
    o << ",\"argmin\":";
    if (s.argmin) {
        append_grid_point(o, *s.argmin);
    } else {
        o << "null";
    }
    o << ",\"domains_evaluated\":" << s.domains_evaluated;
    o << ",\"frequencies\":[";
    for (std::size_t i = 0; i < s.frequencies.size(); ++i) {
        const ClassicFrequencyResult& f = s.frequencies[i];
        if (i) o << ",";
        o << "{\"piece\":" << f.freq.piece << ",\"index\":" << f.freq.i
          << ",\"delta\":" << format_number(f.freq.delta) << ",\"k_l\":" << format_number(f.k_l)
          << ",\"k_u\":" << format_number(f.k_u) << ",\"k_m\":" << format_number(f.k_m)
          << ",\"iterations\":" << f.iterations << ",\"evaluated\":" << f.evaluated
          << ",\"converged\":" << (f.converged ? "true" : "false")
          << ",\"zero_margin\":" << (f.zero_margin ? "true" : "false") << "}";
    }
    o << "],\"note\":" << quoted(kGridNote);
    o << "}}\n";
    return o.str();
}

std::string serialize_compare_report(const RunEcho& echo, double eps_r,
                                     const CompareReport& cmp) {
    std::ostringstream o;
    o << "{\"command\":\"compare\",";
    append_echo(o, echo);
    o << ",\"eps_r\":" << format_number(eps_r);
    o << ",\"result\":{";
    o << "\"k_hat_alg2\":" << format_number(cmp.k_hat_alg2);
    o << ",\"k_tilde_alg1\":" << format_number(cmp.k_tilde_alg1);
    o << ",\"domains_alg2\":" << cmp.domains_alg2;
    o << ",\"domains_alg1\":" << cmp.domains_alg1;
    o << ",\"ratio\":" << format_number(cmp.ratio);
    o << ",\"speedup\":" << format_number(cmp.speedup);
    o << ",\"wall_alg2_s\":" << format_number(cmp.wall_alg2);
    o << ",\"wall_alg1_s\":" << format_number(cmp.wall_alg1);
    o << ",\"alg2_converged\":" << (cmp.alg2_converged ? "true" : "false");
    o << ",\"alg1_converged\":" << (cmp.alg1_converged ? "true" : "false");
    o << "}}\n";
    return o.str();
}

}  // namespace dstab
