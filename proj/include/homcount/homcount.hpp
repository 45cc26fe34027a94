#pragma once

#include "homcount/canonical.hpp"
#include "homcount/caps.hpp"
#include "homcount/cklogic.hpp"
#include "homcount/error.hpp"
#include "homcount/homsearch.hpp"
#include "homcount/lovasz.hpp"
#include "homcount/numeric.hpp"
#include "homcount/partition.hpp"
#include "homcount/profinite.hpp"
#include "homcount/quotposet.hpp"
#include "homcount/sigstruct.hpp"
#include "homcount/stirling.hpp"
#include "homcount/textio.hpp"
#include "homcount/trees.hpp"
