#pragma once

#include "awkit/scalar.hpp"
#include "awkit/errors.hpp"
#include "awkit/tolerances.hpp"
#include "awkit/matrix.hpp"
#include "awkit/hermitian.hpp"
#include "awkit/core.hpp"
#include "awkit/reduction.hpp"
#include "awkit/reconstruction.hpp"
#include "awkit/density.hpp"
#include "awkit/ensemble.hpp"
#include "awkit/eigensolver.hpp"
#include "awkit/verify.hpp"
#include "awkit/io.hpp"
