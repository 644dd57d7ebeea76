#pragma once

#include "classical.hpp"
#include "element.hpp"
#include "energy.hpp"
#include "extension.hpp"
#include "io.hpp"
#include "random.hpp"
#include "spectral.hpp"
#include "tensor.hpp"
#include "traces.hpp"
#include "v0form.hpp"
#include "verify.hpp"
#include "zeta.hpp"
