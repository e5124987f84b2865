#pragma once

#include "seqx/analysis.hpp"
#include "seqx/baseline.hpp"
#include "seqx/event.hpp"
#include "seqx/filter.hpp"
#include "seqx/framer.hpp"
#include "seqx/io.hpp"
#include "seqx/metrics.hpp"
#include "seqx/seqx_filter.hpp"
#include "seqx/synthgen.hpp"
