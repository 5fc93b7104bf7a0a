#pragma once

#include "dpp/baselines.hpp"
#include "dpp/campaign.hpp"
#include "dpp/corroborate.hpp"
#include "dpp/costmodel.hpp"
#include "dpp/graph.hpp"
#include "dpp/graph_io.hpp"
#include "dpp/random.hpp"
#include "dpp/search.hpp"
#include "dpp/sim.hpp"
#include "dpp/spectrum.hpp"
