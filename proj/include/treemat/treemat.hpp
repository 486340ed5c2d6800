#pragma once

#include "treemat/dense.hpp"
#include "treemat/errors.hpp"
#include "treemat/ingest.hpp"
#include "treemat/inverse.hpp"
#include "treemat/matrix.hpp"
#include "treemat/oracle.hpp"
#include "treemat/rng.hpp"
#include "treemat/tree.hpp"
