#pragma once

#include <memory>
#include <vector>

#include "tomoprior/grid.hpp"

namespace tomoprior {

enum class TransformKind { Dct2, Identity };

/// Orthonormal sparsifying basis for a fixed grid shape. Dct2 is the
/// orthonormal 2D DCT-II; forward is analysis (theta = Psi^T x), inverse
/// is synthesis (x = Psi theta). Parseval holds: |theta|_2 == |x|_2.
class SparsifyingTransform {
public:
    SparsifyingTransform(TransformKind kind, int width, int height);
    ~SparsifyingTransform();
    SparsifyingTransform(SparsifyingTransform&&) noexcept;
    SparsifyingTransform& operator=(SparsifyingTransform&&) noexcept;
    SparsifyingTransform(const SparsifyingTransform&) = delete;
    SparsifyingTransform& operator=(const SparsifyingTransform&) = delete;

    TransformKind kind() const { return kind_; }
    int width() const { return width_; }
    int height() const { return height_; }

    std::vector<double> forward(const ImageGrid& x) const;
    ImageGrid inverse(const std::vector<double>& coefficients) const;

private:
    struct Plans;
    TransformKind kind_;
    int width_;
    int height_;
    std::unique_ptr<Plans> plans_;
};

std::vector<double> transform_forward(const ImageGrid& x, const SparsifyingTransform& t);
ImageGrid transform_inverse(const std::vector<double>& coefficients,
                            const SparsifyingTransform& t);

} // namespace tomoprior
