#pragma once

#include <Eigen/Dense>

#include "rtxva/rating.hpp"

namespace rtxva {

struct CopulaSpec {
    double alpha = 0.0;  // common-jump intensity weight, in [0,1]
};

struct MeasureChangeSpec {
    double alpha1 = 0.0;  // h_{ij} = exp(alpha1*i + alpha2*j)
    double alpha2 = 0.0;
};

// Generator of the product chain. Product states are row-major:
// (i,h) -> (i-1)*k + (h-1), and (i,h,l) -> ((i-1)*k + (h-1))*k + (l-1).
struct JointGenerator {
    int k = 0;             // marginal categories per component
    int n_components = 0;  // 2 or 3
    Eigen::MatrixXd a;

    int dim() const { return static_cast<int>(a.rows()); }

    int index(int i, int h) const { return (i - 1) * k + (h - 1); }
    int index3(int i, int h, int l) const { return ((i - 1) * k + (h - 1)) * k + (l - 1); }

    // 1-based category of component c (1-based) in product state `state`.
    int component(int state, int c) const {
        int div = 1;
        for (int j = n_components - c; j > 0; --j) div *= k;
        return (state / div) % k + 1;
    }
};

// Bivariate Markov copula: marginals g1, g2 preserved exactly, simultaneous
// moves to a common category carry intensity alpha*min(a1_ij, a2_hk).
JointGenerator build_joint_generator(const GeneratorMatrix& g1, const GeneratorMatrix& g2,
                                     const CopulaSpec& spec);

// Trivariate extension: components 1-2 coupled as above, the third migrates
// independently (Kronecker-sum factor).
JointGenerator build_joint_generator_3(const GeneratorMatrix& g1, const GeneratorMatrix& g2,
                                       const GeneratorMatrix& g3, const CopulaSpec& spec);

// Exponential change of measure A^h = [a_uv h_v / h_u]; diagonals reset to
// minus the row sum. alpha1 = alpha2 = 0 leaves the generator untouched.
JointGenerator change_measure(const JointGenerator& g, const MeasureChangeSpec& spec);

}  // namespace rtxva
