#ifndef PORDER_CATALOG_HPP
#define PORDER_CATALOG_HPP

#include <string>
#include <vector>

#include "porder/cluster.hpp"
#include "porder/constructions.hpp"

namespace porder {

// Built-in instances addressable by name from the CLI and the test suites.
// Witness deciders are values from this catalog; no code loading.

std::vector<std::string> witness_names();      // parity, majority, monsat-witness, ...
WitnessPredicate witness_by_name(const std::string& name);  // always normalized

std::vector<std::string> fp_names();  // len, value, const3
FPFunction fp_by_name(const std::string& name);

std::vector<std::string> upsv_names();  // popcount-plus1, value-plus1, const1
UPSVMachine upsv_by_name(const std::string& name);

// Order triples by "family/instance" id, e.g. "sharp-p/parity", "fp/len",
// "offset/constant-k", "upsv/const1", "increment/prefix". The ids
// "fp-order/f=3" and "offset-order/f=1,p=2" are fixed aliases.
std::vector<std::string> triple_ids();
OrderTriple triple_by_id(const std::string& id);

// Shortlex with b(x) = epsilon, t(x) = x: counts the nonempty words strictly
// shortlex-below x. The smallest total base for the increment and cluster
// transfers.
OrderTriple shortlex_prefix_triple();

std::vector<std::string> cluster_names();
ClusterWitness cluster_by_name(const std::string& name);
// Value bound usable for the almost-unique transfer of that machine.
Poly cluster_value_bound(const std::string& name);
// Exact accept count, computed independently of any order machinery.
uint64_t cluster_expected_count(const std::string& name, const Word& x);

}  // namespace porder

#endif
