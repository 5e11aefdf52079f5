#pragma once

namespace starprod {

/// Kernel selection: every parallel kernel has a serial reference twin that
/// performs the identical exact computation; results are bit-for-bit equal.
enum class ExecPolicy { kSerial, kParallel };

}  // namespace starprod
