#pragma once
/**
 * @file   report.hpp
 * @brief  Experiment reports and their JSON/CSV encodings.
 *
 * A report is a named list of cells. Each cell pairs a Monte Carlo estimate
 * and its standard error with an analytical reference interval [lower, upper]
 * (a point value has lower == upper; either end may be absent) and a verdict
 * computed by judge().
 */

#include <halfdisk/bounds.hpp>

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace halfdisk
{
    enum class Verdict
    {
        consistent,
        violated,
        vacuous,      ///< the reference bound carries no information (e.g. a probability bound >= 1)
        inconclusive, ///< too few samples to judge
        exploratory   ///< reported without a reference
    };

    [[nodiscard]] std::string to_string (Verdict v);

    /// Radius, in standard errors, of every consistency check.
    inline constexpr double kVerdictSigmas = 3.0;

    /// violated iff estimate - 3se > upper or estimate + 3se < lower (up to 1e-12 relative roundoff); otherwise consistent.
    [[nodiscard]] Verdict judge (double estimate, double std_error, std::optional<double> lower, std::optional<double> upper);

    using NamedValues = std::vector<std::pair<std::string, double>>;

    struct ReportCell
    {
        std::string label;
        NamedValues params;
        std::optional<double> lower;
        std::optional<double> upper;
        double estimate{0.0};
        double std_error{0.0};
        std::size_t samples{0};
        Verdict verdict{Verdict::exploratory};
        NamedValues extras;

        [[nodiscard]] std::optional<double> param (const std::string &key) const;
        [[nodiscard]] std::optional<double> extra (const std::string &key) const;
    };

    struct ExperimentReport
    {
        std::string name;
        std::vector<ReportCell> cells;

        [[nodiscard]] bool any_violated () const noexcept;
    };

    using Json = nlohmann::ordered_json;

    void to_json (Json &j, const BoundReport &b);
    void to_json (Json &j, const HopBounds &b);
    void to_json (Json &j, const ReportCell &c);
    void to_json (Json &j, const ExperimentReport &r);

    /// JSON document `{"name": ..., "cells": [...]}`, two-space indent, trailing newline.
    void write_report_json (const ExperimentReport &report, std::ostream &out);

    /// One row per cell. Columns: name,label,<params>,lower,upper,estimate,std_error,samples,verdict,<extras>.
    void write_report_csv (const ExperimentReport &report, std::ostream &out);

} // namespace halfdisk
