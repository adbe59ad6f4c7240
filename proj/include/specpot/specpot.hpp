#pragma once

#include "specpot/errors.hpp"
#include "specpot/special.hpp"
#include "specpot/linalg.hpp"
#include "specpot/system.hpp"
#include "specpot/ortho_poly.hpp"
#include "specpot/hamiltonian.hpp"
#include "specpot/reconstruct.hpp"
#include "specpot/wavefunction.hpp"
