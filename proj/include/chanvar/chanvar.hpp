#pragma once

#include "chanvar/errors.hpp"
#include "chanvar/linalg.hpp"
#include "chanvar/states.hpp"
#include "chanvar/channels.hpp"
#include "chanvar/uncertainty.hpp"
#include "chanvar/infotheory.hpp"
#include "chanvar/closed_forms.hpp"
