#include "banova/render.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace banova {

namespace {

std::string param_display(ParamKind kind) {
    switch (kind) {
    case ParamKind::FiniteSd: return "(finite) s_alpha";
    case ParamKind::SuperSd: return "(super) sigma_alpha";
    case ParamKind::ErrorSd: return "sigma_eps";
    }
    return "";
}

std::string quantile_label(double p) {
    std::string s = fmt_fixed(p, 3);
    while (s.size() > 1 && s.back() == '0')
        s.pop_back();
    if (!s.empty() && s.back() == '.')
        s.pop_back();
    return "Q" + s;
}

} // namespace

std::string fmt_fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return buf;
}

std::string fmt_full(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void render_classical_text(std::ostream& out, const ClassicalTable& table) {
    out << std::left << std::setw(8) << "Source" << std::right << std::setw(5) << "Df"
        << std::setw(11) << "Sum Sq" << std::setw(11) << "Mean Sq" << std::setw(10) << "F value"
        << std::setw(11) << "Pr(>F)" << "\n";
    for (const auto& row : table.rows) {
        out << std::left << std::setw(8) << row.source << std::right << std::setw(5) << row.df
            << std::setw(11) << fmt_fixed(row.sum_sq, 2) << std::setw(11)
            << fmt_fixed(row.mean_sq, 2);
        if (row.f_value)
            out << std::setw(10) << fmt_fixed(*row.f_value, 2) << std::setw(11)
                << fmt_fixed(*row.p_value, 6);
        out << "\n";
    }
}

void render_classical_csv(std::ostream& out, const ClassicalTable& table) {
    out << "source,df,sum_sq,mean_sq,f_value,p_value\n";
    for (const auto& row : table.rows) {
        out << row.source << ',' << row.df << ',' << fmt_full(row.sum_sq) << ','
            << fmt_full(row.mean_sq) << ',';
        if (row.f_value)
            out << fmt_full(*row.f_value);
        out << ',';
        if (row.p_value)
            out << fmt_full(*row.p_value);
        out << "\n";
    }
}

nlohmann::json classical_to_json(const ClassicalTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json j{{"source", row.source},
                         {"df", row.df},
                         {"sum_sq", row.sum_sq},
                         {"mean_sq", row.mean_sq}};
        if (row.f_value)
            j["f_value"] = *row.f_value;
        if (row.p_value)
            j["p_value"] = *row.p_value;
        rows.push_back(std::move(j));
    }
    return nlohmann::json{{"rows", std::move(rows)}};
}

void render_banova_text(std::ostream& out, const BanovaTable& table, double pr_null_value) {
    const double tail = 0.5 * (1.0 - table.ci_level);
    const std::string interval_header =
        "(" + quantile_label(tail) + ", " + quantile_label(1.0 - tail) + ")";
    out << std::left << std::setw(8) << "" << std::setw(21) << "Parameter" << std::right
        << std::setw(9) << "Mean" << std::setw(9) << "Median" << std::setw(20) << interval_header
        << std::setw(18) << "Pr(>sigma_eps)" << "\n";
    for (const auto& row : table.rows) {
        const std::string interval =
            "(" + fmt_fixed(row.q_lo, 2) + ", " + fmt_fixed(row.q_hi, 2) + ")";
        out << std::left << std::setw(8) << row.label << std::setw(21)
            << param_display(row.param_kind) << std::right << std::setw(9)
            << fmt_fixed(row.mean, 2) << std::setw(9) << fmt_fixed(row.median, 2) << std::setw(20)
            << interval << std::setw(18)
            << (row.pr_gt_error ? fmt_fixed(*row.pr_gt_error, 3) : std::string("-")) << "\n";
    }
    out << "Pr(sigma2_alpha = 0 | Y) = " << fmt_fixed(pr_null_value, 4) << "\n";
    out << "draws = " << table.n_draws << "  seed = " << table.seed << "  ci = "
        << fmt_fixed(table.ci_level, 2) << "\n";
}

void render_banova_csv(std::ostream& out, const BanovaTable& table, double pr_null_value) {
    out << "# pr_null: " << fmt_full(pr_null_value) << "\n";
    out << "# draws: " << table.n_draws << " seed: " << table.seed
        << " ci: " << fmt_full(table.ci_level) << "\n";
    out << "label,kind,mean,median,q_lo,q_hi,pr_gt_error,zero_mass\n";
    for (const auto& row : table.rows) {
        out << row.label << ',' << param_kind_name(row.param_kind) << ',' << fmt_full(row.mean)
            << ',' << fmt_full(row.median) << ',' << fmt_full(row.q_lo) << ','
            << fmt_full(row.q_hi) << ',';
        if (row.pr_gt_error)
            out << fmt_full(*row.pr_gt_error);
        out << ',';
        if (row.zero_mass)
            out << fmt_full(*row.zero_mass);
        out << "\n";
    }
}

nlohmann::json banova_to_json(const BanovaTable& table, double pr_null_value) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json j{{"label", row.label},
                         {"kind", param_kind_name(row.param_kind)},
                         {"mean", row.mean},
                         {"median", row.median},
                         {"q_lo", row.q_lo},
                         {"q_hi", row.q_hi}};
        if (row.pr_gt_error)
            j["pr_gt_error"] = *row.pr_gt_error;
        if (row.zero_mass)
            j["zero_mass"] = *row.zero_mass;
        rows.push_back(std::move(j));
    }
    return nlohmann::json{{"rows", std::move(rows)},
                          {"pr_null", pr_null_value},
                          {"n_draws", table.n_draws},
                          {"seed", table.seed},
                          {"ci_level", table.ci_level}};
}

nlohmann::json intervals_to_json(const std::vector<IntervalRecord>& records) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& rec : records) {
        out.push_back({{"label", rec.label},
                       {"kind", param_kind_name(rec.kind)},
                       {"lo50", rec.lo50},
                       {"hi50", rec.hi50},
                       {"lo95", rec.lo95},
                       {"hi95", rec.hi95},
                       {"median", rec.median},
                       {"zero_dot", rec.zero_dot}});
    }
    return out;
}

} // namespace banova
