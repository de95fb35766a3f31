// Coherence validators: pentagon, hexagon, ribbon axioms, evaluated exactly
// through the morphism engine.  Failures are report entries, never exceptions.

#pragma once

#include "mirrorcat/morphism.hpp"

namespace mirrorcat {

struct CheckItem {
    std::string axiom;     // "pentagon", "hexagon-1", "ribbon-balancing", ...
    std::string instance;  // e.g. "(tau,tau,tau,tau)"
    std::string detail;    // residual location / description

    bool operator==(const CheckItem&) const = default;
};

struct ValidationReport {
    std::string category;
    std::string suite;
    long instances = 0;
    std::vector<CheckItem> failures;

    bool pass() const { return failures.empty(); }
    void merge(const ValidationReport& other);
};

// Structural invariants: unit/dual/fusion axioms, F invertibility, duality
// zig-zags, pivotal consistency, qdim consistency.
ValidationReport validate_structure(const CategoryPtr& C);

// Pentagon axiom on every 4-factor instance (i,j,k,l), blockwise over totals.
ValidationReport validate_pentagon(const CategoryPtr& C, int jobs = 1);

// Both hexagon families on every triple (x,y,z).
ValidationReport validate_hexagon(const CategoryPtr& C, int jobs = 1);

// theta_0 = 1, theta_{i*} = theta_i, and the skeletal balancing
// R^{ji}_k R^{ij}_k = theta_k / (theta_i theta_j).
ValidationReport validate_ribbon(const CategoryPtr& C);

// structure + pentagon + hexagon + ribbon
ValidationReport validate_all(const CategoryPtr& C, int jobs = 1);

}  // namespace mirrorcat
