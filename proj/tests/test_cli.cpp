#include <doctest.h>

#include "qmix/linalg.hpp"
