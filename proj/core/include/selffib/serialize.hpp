#pragma once

#include <string>
#include <vector>

#include "selffib/census.hpp"
#include "selffib/classify.hpp"
#include "selffib/entry_point.hpp"
#include "selffib/ints.hpp"

namespace selffib {

// JSON conventions: domain integers (n, z, c, k, members, ...) are decimal
// strings so consumers never hit the 2^53 double cliff; counts, exponents
// and log values stay plain numbers. Keys appear in a fixed order and
// doubles carry 6 significant digits, so equal inputs give equal bytes.

std::string to_json(const EntryPointRecord& rec);
std::string to_json(const WallExponent& we);
std::string to_json(const ZChain& chain);
std::string to_json(const DivisorClass& dc);
std::string to_json(const ReconciliationReport& rep);
std::string to_json(const CensusReport& rep);
std::string to_json(const BoundReport& rep);
std::string to_json(const std::vector<CGrowthViolation>& violations, u64 x);
std::string to_json(const PrattFibTree& tree);
std::string to_json_class_members(u64 k, u64 x, const std::vector<u64>& members);

// One value per line under an "n" header.
std::string to_csv(const CensusReport& rep);
std::string to_csv_members(const std::vector<u64>& members);

// Human-readable forms used by the CLI's text mode.
std::string to_text(const PrattFibTree& tree);
std::string to_text(const DivisorClass& dc);

} // namespace selffib
