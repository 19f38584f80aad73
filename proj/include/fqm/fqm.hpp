#pragma once

#include "fqm/errors.hpp"
#include "fqm/cyclo.hpp"
#include "fqm/poly.hpp"
#include "fqm/perm.hpp"
#include "fqm/linalg.hpp"
#include "fqm/forms.hpp"
#include "fqm/born.hpp"
#include "fqm/relations.hpp"
#include "fqm/dynamics.hpp"
#include "fqm/pathsum.hpp"
#include "fqm/fixtures.hpp"
