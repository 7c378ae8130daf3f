// Elementwise array primitives behind runtime CPU dispatch. These are the
// inner loops of the area DP and tilted-walk sweeps: first-order geometric
// recurrences batched across independent slices, so each lane is one slice.
//
// Contract: every variant produces bit-identical results to the scalar
// reference. Per-element operation order is fixed, there is no FMA
// contraction (-ffp-contract=off project-wide) and no reassociation.
// dst may alias a or b at the same offset; shifted overlap is not allowed.
#pragma once

#include <cstddef>

namespace ipdsaw::kernels {

void add(double* dst, const double* a, const double* b, std::size_t n);                  // dst = a + b
void add_scale(double* dst, const double* a, const double* b, double s, std::size_t n);  // dst = (a + b) * s
void scale(double* dst, const double* a, double s, std::size_t n);                       // dst = a * s
void axpy(double* dst, const double* a, double s, std::size_t n);                        // dst += a * s
void mul(double* dst, const double* a, const double* b, std::size_t n);                  // dst = a * b

// Name of the variant selected at first use: "scalar", "avx2" or "neon".
const char* active_backend();
// Force a specific variant (equivalence tests); false if unavailable here.
bool set_backend(const char* name);

namespace scalar {
void add(double* dst, const double* a, const double* b, std::size_t n);
void add_scale(double* dst, const double* a, const double* b, double s, std::size_t n);
void scale(double* dst, const double* a, double s, std::size_t n);
void axpy(double* dst, const double* a, double s, std::size_t n);
void mul(double* dst, const double* a, const double* b, std::size_t n);
} // namespace scalar

} // namespace ipdsaw::kernels
