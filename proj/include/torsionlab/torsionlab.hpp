#ifndef TORSIONLAB_TORSIONLAB_HPP
#define TORSIONLAB_TORSIONLAB_HPP

#include "torsionlab/curves.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/harness.hpp"
#include "torsionlab/models.hpp"
#include "torsionlab/parallel.hpp"
#include "torsionlab/torsion.hpp"

#endif
