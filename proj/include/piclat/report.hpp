#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "piclat/picard.hpp"

namespace piclat {

using Json = nlohmann::ordered_json;

struct ComputeRequest {
    std::string group;        // group spec; ignored when datum_text is set
    std::string datum_text;   // custom datum file contents
    int g = 1;
    int n = 0;
    std::optional<long> delta;  // integer shorthand
    std::string delta_vec;      // explicit lift "1/2,0,1"
    std::string quantity = "pi1";
    bool rigidified = false;
    int characteristic = 0;
};

const std::vector<std::string>& compute_quantities();

Json rat_json(const Rat& q);
Json group_json(const FGAbGroup& g);
Json report_json(const PicardReport& r);

Group group_for(const ComputeRequest& req);
Pi1Element resolve_delta(const Group& g, std::optional<long> delta, const std::string& delta_vec);

Json compute(const ComputeRequest& req);
std::string envelope_markdown(const Json& env);

// 2 input/validation, 3 applicability, 1 anything else
int exit_code_for(const std::string& error_kind);

}  // namespace piclat
