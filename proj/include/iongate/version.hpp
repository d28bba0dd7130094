#pragma once

#define IONGATE_VERSION "0.1.0"
