#include "bellscope/model_json.hpp"

#include <stdexcept>
#include <string>

namespace bellscope {

nlohmann::json to_json(const DiscreteModel& model)
{
    nlohmann::json outcomes = nlohmann::json::object();
    for (Setting s : kAllSettings) {
        const auto col = model.outcomes(s);
        outcomes[std::string(to_string(s))] = std::vector<int>(col.begin(), col.end());
    }
    nlohmann::json densities = nlohmann::json::object();
    for (SettingPair p : kAllPairs) {
        const auto col = model.column(p);
        densities[std::string(to_string(p))] = std::vector<double>(col.begin(), col.end());
    }
    return {{"labels", model.labels()}, {"outcomes", outcomes}, {"densities", densities}};
}

DiscreteModel discrete_model_from_json(const nlohmann::json& j)
{
    try {
        auto labels = j.at("labels").get<std::vector<std::string>>();
        DiscreteModel::OutcomeTable outcomes;
        for (Setting s : kAllSettings) {
            outcomes[index_of(s)] = j.at("outcomes").at(std::string(to_string(s))).get<std::vector<int>>();
        }
        DiscreteModel::DensityTable densities;
        for (SettingPair p : kAllPairs) {
            densities[index_of(p)] = j.at("densities").at(std::string(to_string(p))).get<std::vector<double>>();
        }
        return DiscreteModel(std::move(labels), std::move(outcomes), std::move(densities));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("discrete model JSON: ") + e.what());
    }
}

} // namespace bellscope
