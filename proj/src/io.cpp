#include "splitprob/io.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace splitprob::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Sheet& sheet) {
    for (const auto& c : sheet.comments) os << "# " << c << "\n";
    for (size_t i = 0; i < sheet.columns.size(); ++i)
        os << sheet.columns[i] << (i + 1 < sheet.columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : sheet.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
}

namespace {

nlohmann::json config_json(const mc::SimConfig& cfg) {
    return {{"dt", cfg.dt},
            {"n_trials", cfg.n_trials},
            {"seed", cfg.seed},
            {"max_steps", cfg.max_steps},
            {"exact_clocks", cfg.exact_clocks}};
}

}  // namespace

Sheet estimate_sheet(const mc::EstimateTable& table) {
    Sheet sheet;
    sheet.add_comment("model: " + table.model);
    sheet.add_comment("config: " + config_json(table.config).dump());
    sheet.add_comment("max_steps_exceeded: " + std::to_string(table.n_max_steps_exceeded));
    sheet.columns = {"side", "outcome", "count", "p_hat", "std_err"};
    for (ExitSide side : {ExitSide::Left, ExitSide::Right})
        for (Eigen::Index j = 0; j < table.n_outcomes(); ++j)
            sheet.rows.push_back({to_string(side), table.outcome_labels[size_t(j)],
                                  std::to_string(table.count(side, j)),
                                  format_double(table.p_hat(side, j)),
                                  format_double(table.std_err(side, j))});
    return sheet;
}

std::string estimate_json(const mc::EstimateTable& table) {
    nlohmann::json entries = nlohmann::json::array();
    for (ExitSide side : {ExitSide::Left, ExitSide::Right})
        for (Eigen::Index j = 0; j < table.n_outcomes(); ++j)
            entries.push_back({{"side", to_string(side)},
                               {"outcome", table.outcome_labels[size_t(j)]},
                               {"count", table.count(side, j)},
                               {"p_hat", table.p_hat(side, j)},
                               {"std_err", table.std_err(side, j)}});
    nlohmann::json doc = {{"model", table.model},
                          {"config", config_json(table.config)},
                          {"n_trials", table.n_trials},
                          {"max_steps_exceeded", table.n_max_steps_exceeded},
                          {"entries", entries}};
    return doc.dump(2);
}

Sheet table_sheet(const JointSplittingTable& table) {
    Sheet sheet;
    sheet.add_comment("x0: " + format_double(table.x0));
    sheet.add_comment("y0: " + table.y0);
    sheet.columns = {"side", "outcome", "value"};
    for (ExitSide side : {ExitSide::Left, ExitSide::Right}) {
        const Eigen::ArrayXd& vals = table.side(side);
        for (Eigen::Index j = 0; j < vals.size(); ++j) {
            std::string name = table.outcomes.is_grid()
                                   ? format_double(table.outcomes.grid_points()(j))
                                   : table.outcomes.label_set()[size_t(j)];
            sheet.rows.push_back({to_string(side), name, format_double(vals(j))});
        }
    }
    return sheet;
}

}  // namespace splitprob::io
