#pragma once

#include <starbary/bary_core.hpp>
#include <starbary/conformal_maps.hpp>
#include <starbary/disk_tensor.hpp>
#include <starbary/experiments.hpp>
#include <starbary/starlike.hpp>
