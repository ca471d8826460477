#pragma once

#include "klein/common.hpp"
#include "klein/finite_field.hpp"
#include "klein/klein_geometry.hpp"
#include "klein/perm_group.hpp"
#include "klein/projective_space.hpp"
#include "klein/report.hpp"
#include "klein/s6_outer.hpp"
#include "klein/staudt.hpp"
