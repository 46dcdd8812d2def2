#pragma once

// Umbrella header: the full library except the CLI layer (which pulls in
// CLI11; include qkl/cli.hpp separately if you want it).

#include "qkl/laurent.hpp"
#include "qkl/order.hpp"
#include "qkl/tensor.hpp"
#include "qkl/canonical.hpp"
#include "qkl/json_io.hpp"
