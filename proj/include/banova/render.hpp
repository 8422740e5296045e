#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "banova/classical.hpp"
#include "banova/summary.hpp"

namespace banova {

// %.*f with fixed decimals; tables print 2 decimals, p-values 6.
std::string fmt_fixed(double x, int decimals);
// Shortest exact round-trip representation, used by CSV exports.
std::string fmt_full(double x);

void render_classical_text(std::ostream& out, const ClassicalTable& table);
void render_classical_csv(std::ostream& out, const ClassicalTable& table);
nlohmann::json classical_to_json(const ClassicalTable& table);

void render_banova_text(std::ostream& out, const BanovaTable& table, double pr_null_value);
void render_banova_csv(std::ostream& out, const BanovaTable& table, double pr_null_value);
nlohmann::json banova_to_json(const BanovaTable& table, double pr_null_value);

nlohmann::json intervals_to_json(const std::vector<IntervalRecord>& records);

} // namespace banova
