#include "selffib/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace selffib {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string dec(u64 v) { return std::to_string(v); }

ordered_json dec_list(const std::vector<u64>& values) {
  ordered_json arr = ordered_json::array();
  for (u64 v : values) arr.push_back(dec(v));
  return arr;
}

// 6 significant digits, shortest spelling (no trailing zeros).
double round6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::strtod(buf, nullptr);
}

const char* method_name(CensusMethod m) {
  switch (m) {
    case CensusMethod::kDirect: return "direct";
    case CensusMethod::kEntryPoint: return "entry_point";
    case CensusMethod::kClassification: return "classification";
  }
  return "?";
}

const char* rule_name(RuleKind k) {
  switch (k) {
    case RuleKind::kFixed0: return "fixed0";
    case RuleKind::kFree: return "free";
    case RuleKind::kThresholdOrZero: return "threshold-or-zero";
  }
  return "?";
}

std::string empty_reason_text(const DivisorClass& dc) {
  switch (dc.reason) {
    case EmptyReason::kDivisibleBy8: return "divisible by 8";
    case EmptyReason::kDivisibleBy5: return "divisible by 5";
    case EmptyReason::kPrimePowerExcess: {
      std::string p = dec(dc.witness);
      return "divisible by " + p + "^(e(" + p + ")+1)";
    }
  }
  return "?";
}

ordered_json pratt_node_json(const PrattFibNode& node) {
  ordered_json j;
  j["p"] = dec(node.p);
  j["exponent"] = node.exponent;
  j["prime_power"] = dec(node.prime_power);
  switch (node.stop) {
    case PrattFibNode::Stop::kNone: break;
    case PrattFibNode::Stop::kRepeatedPrime: j["truncated"] = "repeat"; break;
    case PrattFibNode::Stop::kMaxDepth: j["truncated"] = "depth"; break;
  }
  ordered_json kids = ordered_json::array();
  for (const auto& child : node.children) kids.push_back(pratt_node_json(child));
  j["children"] = std::move(kids);
  return j;
}

void pratt_node_text(const PrattFibNode& node, unsigned indent,
                     std::string& out) {
  out.append(indent * 2, ' ');
  out += dec(node.p);
  if (node.exponent > 1) out += "^" + std::to_string(node.exponent);
  if (node.stop == PrattFibNode::Stop::kRepeatedPrime)
    out += " (truncated: repeat)";
  else if (node.stop == PrattFibNode::Stop::kMaxDepth)
    out += " (truncated: depth)";
  out += '\n';
  for (const auto& child : node.children) pratt_node_text(child, indent + 1, out);
}

} // namespace

std::string to_json(const EntryPointRecord& rec) {
  ordered_json j;
  j["n"] = dec(rec.n);
  j["z"] = dec(rec.z);
  ordered_json asm_list = ordered_json::array();
  for (const auto& [pp, lz] : rec.assembly) {
    ordered_json part;
    part["prime_power"] = dec(pp);
    part["z"] = dec(lz);
    asm_list.push_back(std::move(part));
  }
  j["assembly"] = std::move(asm_list);
  return j.dump();
}

std::string to_json(const WallExponent& we) {
  ordered_json j;
  j["p"] = dec(we.p);
  j["e"] = we.e;
  return j.dump();
}

std::string to_json(const ZChain& chain) {
  ordered_json j;
  j["start"] = dec(chain.start);
  j["iterates"] = dec_list(chain.iterates);
  j["fixed_point"] = dec(chain.fixed_point);
  return j.dump();
}

std::string to_json(const DivisorClass& dc) {
  ordered_json j;
  j["k"] = dec(dc.k);
  if (dc.empty) {
    j["verdict"] = "empty";
    switch (dc.reason) {
      case EmptyReason::kDivisibleBy8: j["reason"] = "divisible-by-8"; break;
      case EmptyReason::kDivisibleBy5: j["reason"] = "divisible-by-5"; break;
      case EmptyReason::kPrimePowerExcess:
        j["reason"] = "divisible-by-p^(e(p)+1)";
        j["witness"] = dec(dc.witness);
        break;
    }
  } else {
    j["verdict"] = "nonempty";
    ordered_json rules = ordered_json::array();
    for (const auto& r : dc.rules) {
      ordered_json rule;
      rule["p"] = dec(r.p);
      rule["rule"] = rule_name(r.kind);
      if (r.kind == RuleKind::kThresholdOrZero) rule["threshold"] = r.threshold;
      rules.push_back(std::move(rule));
    }
    j["rules"] = std::move(rules);
  }
  return j.dump();
}

std::string to_json(const ReconciliationReport& rep) {
  ordered_json j;
  j["k"] = dec(rep.k);
  j["x"] = dec(rep.x);
  j["missing"] = dec_list(rep.missing);
  j["extra"] = dec_list(rep.extra);
  ordered_json counts;
  counts["enumerated"] = rep.enumerated.size();
  counts["brute"] = rep.brute.size();
  counts["missing"] = rep.missing.size();
  counts["extra"] = rep.extra.size();
  j["counts"] = std::move(counts);
  return j.dump();
}

std::string to_json(const CensusReport& rep) {
  ordered_json j;
  j["x"] = dec(rep.x);
  j["method"] = method_name(rep.method);
  j["count"] = rep.count;
  if (!rep.members.empty() || rep.count == 0) j["members"] = dec_list(rep.members);
  if (!rep.per_class.empty()) {
    ordered_json pc;
    for (const auto& [k, c] : rep.per_class) pc[dec(k)] = c;
    j["per_class"] = std::move(pc);
  }
  if (rep.method == CensusMethod::kClassification)
    j["patched"] = dec_list(rep.patched);
  return j.dump();
}

std::string to_json(const BoundReport& rep) {
  ordered_json j;
  j["x"] = dec(rep.x);
  j["a_of_x"] = dec(rep.a_of_x);
  j["log_a"] = round6(rep.log_a);
  j["lower_aux"] = round6(rep.lower_aux);
  j["upper_main"] = round6(rep.upper_main);
  j["heuristic"] = round6(rep.heuristic);
  return j.dump();
}

std::string to_json(const std::vector<CGrowthViolation>& violations, u64 x) {
  ordered_json j;
  j["x"] = dec(x);
  j["violations"] = ordered_json::array();
  for (const auto& v : violations) {
    ordered_json item;
    item["n"] = dec(v.n);
    item["log_c"] = round6(v.log_c);
    item["bound_largest_prime"] = round6(v.bound_largest_prime);
    item["bound_log_sq"] = round6(v.bound_log_sq);
    j["violations"].push_back(std::move(item));
  }
  return j.dump();
}

std::string to_json(const PrattFibTree& tree) {
  ordered_json j;
  j["p"] = dec(tree.root_prime);
  j["max_depth"] = tree.max_depth;
  j["tree"] = pratt_node_json(tree.root);
  return j.dump();
}

std::string to_json_class_members(u64 k, u64 x, const std::vector<u64>& members) {
  ordered_json j;
  j["k"] = dec(k);
  j["x"] = dec(x);
  j["members"] = dec_list(members);
  return j.dump();
}

std::string to_csv(const CensusReport& rep) { return to_csv_members(rep.members); }

std::string to_csv_members(const std::vector<u64>& members) {
  std::string out = "n\n";
  for (u64 n : members) {
    out += dec(n);
    out += '\n';
  }
  return out;
}

std::string to_text(const PrattFibTree& tree) {
  std::string out;
  pratt_node_text(tree.root, 0, out);
  return out;
}

std::string to_text(const DivisorClass& dc) {
  if (dc.empty) return "empty: " + empty_reason_text(dc);
  std::string out = "nonempty:";
  for (const auto& r : dc.rules) {
    out += ' ';
    out += dec(r.p);
    out += ':';
    out += rule_name(r.kind);
    if (r.kind == RuleKind::kThresholdOrZero)
      out += "(" + std::to_string(r.threshold) + ")";
  }
  return out;
}

} // namespace selffib
