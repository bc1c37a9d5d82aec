#pragma once

#include "cyberterrain/config.hpp"
#include "cyberterrain/dot.hpp"
#include "cyberterrain/error.hpp"
#include "cyberterrain/eval.hpp"
#include "cyberterrain/graph.hpp"
#include "cyberterrain/graph_io.hpp"
#include "cyberterrain/io.hpp"
#include "cyberterrain/mdp.hpp"
#include "cyberterrain/mdp_io.hpp"
#include "cyberterrain/mlp.hpp"
#include "cyberterrain/netgen.hpp"
#include "cyberterrain/protocol.hpp"
#include "cyberterrain/qfunction.hpp"
#include "cyberterrain/replay.hpp"
#include "cyberterrain/report.hpp"
#include "cyberterrain/rng.hpp"
#include "cyberterrain/rollout.hpp"
#include "cyberterrain/terrain.hpp"
#include "cyberterrain/train.hpp"
#include "cyberterrain/value_iteration.hpp"
