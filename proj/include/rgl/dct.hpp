#pragma once
#include <Eigen/Dense>

#include "rgl/tensor.hpp"

namespace rgl {

// Orthonormal DCT-II basis matrix of size N x N:
//   B(u, n) = a(u) cos(pi (2n+1) u / (2N)),  a(0)=sqrt(1/N), a(u>0)=sqrt(2/N).
// B is orthogonal, so coefficients = B X B^T and the inverse is B^T Y B.
const Eigen::MatrixXd& dct_basis(std::size_t N);

// Per-channel 2-D transforms; outputs are Raw tensors of the same shape.
ImageTensor dct2(const ImageTensor& x);
ImageTensor idct2(const ImageTensor& coeffs);

// Reverses the DCT coefficients along both frequency axes and transforms
// back, swapping low and high frequencies. An isometric involution; the
// result may leave [0,1], so it is returned untagged (Raw).
ImageTensor freq_flip(const ImageTensor& x);

enum class BandMode { Lowpass, Highpass };

// Keeps only the DCT coefficients inside the top-left (lowpass) or
// bottom-right (highpass) square x square corner, zeroes the rest, and
// transforms back. An orthogonal projection in coefficient space.
ImageTensor band_filter(const ImageTensor& x, BandMode mode, std::size_t square);

}  // namespace rgl
