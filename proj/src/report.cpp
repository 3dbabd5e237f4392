#include <halfdisk/csv.hpp>
#include <halfdisk/report.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace halfdisk
{
    std::string to_string (Verdict v)
    {
        switch (v)
        {
        case Verdict::consistent: return "consistent";
        case Verdict::violated: return "violated";
        case Verdict::vacuous: return "vacuous";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::exploratory: return "exploratory";
        }
        return "unknown";
    }

    Verdict judge (double estimate, double std_error, std::optional<double> lower, std::optional<double> upper)
    {
        // Roundoff slack so exact references survive a zero standard error.
        auto slack = [] (double bound) { return 1e-12 * std::max (1.0, std::abs (bound)); };
        const double margin = kVerdictSigmas * std_error;
        if (upper && estimate - margin > *upper + slack (*upper))
            return Verdict::violated;
        if (lower && estimate + margin < *lower - slack (*lower))
            return Verdict::violated;
        return Verdict::consistent;
    }

    namespace
    {
        std::optional<double> lookup (const NamedValues &values, const std::string &key)
        {
            for (const auto &[k, v] : values)
                if (k == key)
                    return v;
            return std::nullopt;
        }

        Json to_object (const NamedValues &values)
        {
            Json obj = Json::object ();
            for (const auto &[k, v] : values)
                obj[k] = v;
            return obj;
        }

        Json optional_number (std::optional<double> v) { return v ? Json (*v) : Json (nullptr); }

        void append_keys (std::vector<std::string> &keys, const NamedValues &values)
        {
            for (const auto &[k, v] : values)
                if (std::find (keys.begin (), keys.end (), k) == keys.end ())
                    keys.push_back (k);
        }

        std::string csv_value (std::optional<double> v) { return v ? format_number (*v) : std::string{}; }
    } // namespace

    std::optional<double> ReportCell::param (const std::string &key) const { return lookup (params, key); }
    std::optional<double> ReportCell::extra (const std::string &key) const { return lookup (extras, key); }

    bool ExperimentReport::any_violated () const noexcept
    {
        return std::any_of (cells.begin (), cells.end (), [] (const ReportCell &c) { return c.verdict == Verdict::violated; });
    }

    void to_json (Json &j, const BoundReport &b)
    {
        j = Json{{"sigma_interior", b.sigma_interior}, {"sigma_edge", b.sigma_edge}, {"sigma_total", b.sigma_total},
                 {"N", b.N},
                 {"d", b.d},
                 {"eta", b.eta}};
    }

    void to_json (Json &j, const HopBounds &b)
    {
        j = Json{{"lower", b.lower}, {"upper", b.upper}};
        if (b.simplified)
            j["simplified"] = Json{{"lower", b.simplified->first}, {"upper", b.simplified->second}};
    }

    void to_json (Json &j, const ReportCell &c)
    {
        j = Json{{"label", c.label},
                 {"params", to_object (c.params)},
                 {"lower", optional_number (c.lower)},
                 {"upper", optional_number (c.upper)},
                 {"estimate", c.estimate},
                 {"std_error", c.std_error},
                 {"samples", c.samples},
                 {"verdict", to_string (c.verdict)},
                 {"extras", to_object (c.extras)}};
    }

    void to_json (Json &j, const ExperimentReport &r)
    {
        j = Json{{"name", r.name}, {"cells", Json::array ()}};
        for (const auto &c : r.cells)
            j["cells"].push_back (c);
    }

    void write_report_json (const ExperimentReport &report, std::ostream &out) { out << Json (report).dump (2) << '\n'; }

    void write_report_csv (const ExperimentReport &report, std::ostream &out)
    {
        std::vector<std::string> param_keys;
        std::vector<std::string> extra_keys;
        for (const auto &c : report.cells)
        {
            append_keys (param_keys, c.params);
            append_keys (extra_keys, c.extras);
        }

        out << "name,label";
        for (const auto &k : param_keys)
            out << ',' << k;
        out << ",lower,upper,estimate,std_error,samples,verdict";
        for (const auto &k : extra_keys)
            out << ',' << k;
        out << '\n';

        for (const auto &c : report.cells)
        {
            out << report.name << ',' << c.label;
            for (const auto &k : param_keys)
                out << ',' << csv_value (c.param (k));
            out << ',' << csv_value (c.lower) << ',' << csv_value (c.upper) << ',' << format_number (c.estimate) << ','
                << format_number (c.std_error) << ',' << c.samples << ',' << to_string (c.verdict);
            for (const auto &k : extra_keys)
                out << ',' << csv_value (c.extra (k));
            out << '\n';
        }
    }

} // namespace halfdisk
