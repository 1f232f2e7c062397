#pragma once

#include "qfock/canonical.hpp"
#include "qfock/fock.hpp"
#include "qfock/laurent.hpp"
#include "qfock/llt.hpp"
#include "qfock/partition.hpp"
#include "qfock/serialize.hpp"
#include "qfock/wedge.hpp"
