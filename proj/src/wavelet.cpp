#include "treepath/wavelet.hpp"

namespace treepath {

template class WaveletTree<PlainBitVector>;
template class WaveletTree<RrrBitVector>;
template class WaveletTree<ExplicitBits>;

}  // namespace treepath
