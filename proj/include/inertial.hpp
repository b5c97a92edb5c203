#pragma once

#include "inertial/errors.hpp"
#include "inertial/integer.hpp"
#include "inertial/matrix.hpp"
#include "inertial/normal_form.hpp"
#include "inertial/polynomial.hpp"
#include "inertial/abelian.hpp"
#include "inertial/rational_space.hpp"
#include "inertial/mahler.hpp"
#include "inertial/models.hpp"
#include "inertial/linear_shift.hpp"
#include "inertial/finite_group.hpp"
#include "inertial/inertia.hpp"
#include "inertial/fully_inert.hpp"
#include "inertial/entropy.hpp"
