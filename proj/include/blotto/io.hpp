#pragma once

#include <string>

#include "blotto/model.hpp"
#include "blotto/stability.hpp"

namespace blotto {

// Instance document: {"num_items": m, "weights": [..]?, "classes":
// [{"bias": number|"p/q", "count": k}, ..], "unlabeled_cost": number|"p/q",
// "outcome": "median"|"mean"}. Exact rational values round-trip as strings.
Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

// Text form: items separated by ';', each item either "0" (empty) or a
// comma-separated list of <count>x<class_index> terms, e.g. "2x0,1x1;1x0;0".
Arrangement parse_arrangement_text(const std::string& text, int num_classes);
std::string format_arrangement_text(const Arrangement& arr);

// "(class, from, to, delta)" with delta = cost_after - cost_before.
std::string format_witness(const DeviationWitness& w);

}  // namespace blotto
