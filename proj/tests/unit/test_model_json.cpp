#include "bellscope/model_json.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <stdexcept>

using namespace bellscope;

TEST(ModelJson, RoundTrip)
{
    for (double p : {0.0, 0.1, 1.0 / 3.0}) {
        const DiscreteModel a = table2_model({p, {1, -1, 1, 1, -1}});
        const DiscreteModel b = discrete_model_from_json(nlohmann::json::parse(to_json(a).dump()));
        EXPECT_EQ(a, b);
    }
}

TEST(ModelJson, FieldNames)
{
    const nlohmann::json j = to_json(table1_model({0.2}));
    EXPECT_EQ(j.at("labels").size(), 5u);
    EXPECT_TRUE(j.at("outcomes").contains("X'"));
    EXPECT_TRUE(j.at("densities").contains("X'Y'"));
    EXPECT_DOUBLE_EQ(j.at("densities").at("XY")[4].get<double>(), 1.0 - 0.6);
}

TEST(ModelJson, MissingFieldIsInvalidArgument)
{
    nlohmann::json j = to_json(table1_model({0.2}));
    j["densities"].erase("XY'");
    EXPECT_THROW(discrete_model_from_json(j), std::invalid_argument);
    nlohmann::json wrong_type = to_json(table1_model({0.2}));
    wrong_type["outcomes"]["X"] = "plus";
    EXPECT_THROW(discrete_model_from_json(wrong_type), std::invalid_argument);
}

TEST(ModelJson, BadValuesRejected)
{
    nlohmann::json j = to_json(table1_model({0.2}));
    j["outcomes"]["Y"][0] = 3;
    EXPECT_THROW(discrete_model_from_json(j), std::invalid_argument);
}

TEST(ModelJson, FixturesLoad)
{
    std::ifstream bad(FIXTURE_DIR "/corrupted_model.json");
    ASSERT_TRUE(bad);
    const DiscreteModel m = discrete_model_from_json(nlohmann::json::parse(bad));
    EXPECT_EQ(m.size(), 2u);
    std::ifstream good(FIXTURE_DIR "/local_model.json");
    ASSERT_TRUE(good);
    EXPECT_EQ(discrete_model_from_json(nlohmann::json::parse(good)).size(), 4u);
}
