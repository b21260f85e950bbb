#include "blotto/io.hpp"

#include <sstream>

#include <json.hpp>

namespace blotto {

namespace {

using nlohmann::json;

Scalar scalar_from_json(const json& j, const char* what) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_number()) return Scalar(j.get<double>());
  throw ParseError(std::string(what) + " must be a number or a 'p/q' string");
}

json scalar_to_json(const Scalar& s) {
  if (s.exact) {
    if (s.exact->den() == 1) return json(s.exact->num());
    return json(s.exact->str());
  }
  return json(s.value);
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
    if (!doc.contains("num_items") || !doc["num_items"].is_number_integer()) {
      throw ParseError("missing or non-integer 'num_items'");
    }
    int m = doc["num_items"].get<int>();
    std::vector<Scalar> weights;
    if (doc.contains("weights")) {
      if (!doc["weights"].is_array()) throw ParseError("'weights' must be an array");
      for (const json& w : doc["weights"]) weights.push_back(scalar_from_json(w, "weight"));
    }
    if (!doc.contains("classes") || !doc["classes"].is_array()) {
      throw ParseError("missing 'classes' array");
    }
    std::vector<AgentClass> classes;
    for (const json& c : doc["classes"]) {
      if (!c.is_object() || !c.contains("bias") || !c.contains("count") ||
          !c["count"].is_number_integer()) {
        throw ParseError("each class needs a 'bias' and an integer 'count'");
      }
      classes.push_back({scalar_from_json(c["bias"], "bias"), c["count"].get<int>()});
    }
    if (!doc.contains("unlabeled_cost")) throw ParseError("missing 'unlabeled_cost'");
    Scalar cu = scalar_from_json(doc["unlabeled_cost"], "unlabeled_cost");
    if (!doc.contains("outcome") || !doc["outcome"].is_string()) {
      throw ParseError("missing 'outcome' string");
    }
    std::string oc = doc["outcome"].get<std::string>();
    Outcome outcome;
    if (oc == "median") {
      outcome = Outcome::Median;
    } else if (oc == "mean") {
      outcome = Outcome::Mean;
    } else {
      throw ParseError("'outcome' must be 'median' or 'mean'");
    }
    return Instance(m, std::move(classes), cu, outcome, std::move(weights));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["num_items"] = inst.num_items;
  json weights = json::array();
  for (const Scalar& w : inst.weights) weights.push_back(scalar_to_json(w));
  doc["weights"] = weights;
  json classes = json::array();
  for (const AgentClass& c : inst.classes) {
    classes.push_back({{"bias", scalar_to_json(c.bias)}, {"count", c.count}});
  }
  doc["classes"] = classes;
  doc["unlabeled_cost"] = scalar_to_json(inst.unlabeled_cost);
  doc["outcome"] = to_string(inst.outcome);
  return doc.dump(2) + "\n";
}

Arrangement parse_arrangement_text(const std::string& text, int num_classes) {
  if (num_classes < 1) throw ParseError("need at least one class");
  std::vector<std::string> items;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      items.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  items.push_back(cur);
  Arrangement arr(static_cast<int>(items.size()), num_classes);
  for (int i = 0; i < arr.items; ++i) {
    const std::string& spec = items[i];
    if (spec.empty()) throw ParseError("empty item entry; write '0' for an empty item");
    if (spec == "0") continue;
    std::istringstream ss(spec);
    std::string term;
    while (std::getline(ss, term, ',')) {
      auto x = term.find('x');
      if (x == std::string::npos) {
        throw ParseError("arrangement term '" + term + "' is not <count>x<class>");
      }
      int count, cls;
      try {
        size_t u1 = 0, u2 = 0;
        count = std::stoi(term.substr(0, x), &u1);
        cls = std::stoi(term.substr(x + 1), &u2);
        if (u1 != x || u2 != term.size() - x - 1) throw std::invalid_argument(term);
      } catch (const std::exception&) {
        throw ParseError("arrangement term '" + term + "' is not <count>x<class>");
      }
      if (count < 0) throw ParseError("negative count in arrangement term '" + term + "'");
      if (cls < 0 || cls >= num_classes) {
        throw ParseError("class index out of range in term '" + term + "'");
      }
      arr.at(i, cls) += count;
    }
  }
  return arr;
}

std::string format_arrangement_text(const Arrangement& arr) {
  std::ostringstream out;
  for (int i = 0; i < arr.items; ++i) {
    if (i > 0) out << ';';
    if (arr.item_total(i) == 0) {
      out << '0';
      continue;
    }
    bool first = true;
    for (int t = 0; t < arr.num_classes; ++t) {
      if (arr.at(i, t) == 0) continue;
      if (!first) out << ',';
      out << arr.at(i, t) << 'x' << t;
      first = false;
    }
  }
  return out.str();
}

std::string format_witness(const DeviationWitness& w) {
  std::ostringstream out;
  out << '(' << w.class_index << ", " << w.from_item << ", " << w.to_item << ", "
      << (w.cost_after - w.cost_before) << ')';
  return out.str();
}

}  // namespace blotto
