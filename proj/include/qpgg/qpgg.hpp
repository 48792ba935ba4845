#pragma once

#include "qpgg/bimatrix.hpp"
#include "qpgg/error.hpp"
#include "qpgg/ising_map.hpp"
#include "qpgg/ising_oracle.hpp"
#include "qpgg/linalg.hpp"
#include "qpgg/nash.hpp"
#include "qpgg/quantum_game.hpp"
