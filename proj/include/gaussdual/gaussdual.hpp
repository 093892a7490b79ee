#pragma once

#include "gaussdual/bench.hpp"
#include "gaussdual/dual_nfg.hpp"
#include "gaussdual/duality_engine.hpp"
#include "gaussdual/errors.hpp"
#include "gaussdual/ladder_model.hpp"
#include "gaussdual/linalg.hpp"
#include "gaussdual/model_io.hpp"
#include "gaussdual/modelgen.hpp"
#include "gaussdual/sparse.hpp"
#include "gaussdual/tree_inference.hpp"
