#pragma once

#include "complexity.hpp"
#include "fermion.hpp"
#include "hsdeg.hpp"
#include "linalg.hpp"
#include "numerics.hpp"
#include "probe.hpp"
#include "qae.hpp"
#include "qpe.hpp"
#include "sampling.hpp"
