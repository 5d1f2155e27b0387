#pragma once

#include "config.hpp"
#include "output.hpp"
#include "runner.hpp"
