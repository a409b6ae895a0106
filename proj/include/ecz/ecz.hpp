#pragma once

#include "ecz/bench.hpp"
#include "ecz/channel.hpp"
#include "ecz/container.hpp"
#include "ecz/core.hpp"
#include "ecz/error.hpp"
#include "ecz/frame.hpp"
#include "ecz/huffman.hpp"
#include "ecz/io.hpp"
#include "ecz/packing.hpp"
