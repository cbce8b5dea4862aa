#pragma once

#define GCDLAB_VERSION "0.1.0"
#define GCDLAB_SCHEMA_VERSION 1
