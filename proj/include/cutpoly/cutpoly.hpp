#pragma once

#include "cutpoly/certificates.hpp"
#include "cutpoly/config.hpp"
#include "cutpoly/errors.hpp"
#include "cutpoly/formulation.hpp"
#include "cutpoly/graph_io.hpp"
#include "cutpoly/hamilton.hpp"
#include "cutpoly/instances.hpp"
#include "cutpoly/lp/dual.hpp"
#include "cutpoly/lp/json.hpp"
#include "cutpoly/lp/model.hpp"
#include "cutpoly/lp/simplex.hpp"
#include "cutpoly/oracles.hpp"
#include "cutpoly/pipeline.hpp"
#include "cutpoly/rational.hpp"
#include "cutpoly/relaxations.hpp"
#include "cutpoly/splitoff.hpp"
#include "cutpoly/types.hpp"
