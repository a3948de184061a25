#pragma once

#include <cstdint>

#include "trusslab/hom.hpp"
#include "trusslab/module.hpp"
#include "trusslab/truss.hpp"

// Serial reference implementations: straightforward nested loops with early
// exit, kept independent of the OpenMP kernels so the two can be compared in
// tests and benchmarks.
namespace trusslab::serial {

ValidationReport validate_heap(const FiniteHeap& h);
ValidationReport validate_truss(const FiniteTruss& t);
ValidationReport validate_module(const FiniteModule& m);
bool is_abelian(const FiniteHeap& h);

// Unpruned brute force over all |cod|^|dom| candidate maps; the independent
// oracle for enumerate_hom.
HomSet enumerate_hom_bruteforce(const FiniteModule& m, const FiniteModule& n,
                                std::uint64_t budget = kDefaultHomBudget);

}  // namespace trusslab::serial
