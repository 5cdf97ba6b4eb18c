#pragma once

#define FERMISPEC_VERSION "1.0.0"
