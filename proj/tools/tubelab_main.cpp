// SPDX-License-Identifier: Apache-2.0
#include "tubelab/cli.hpp"

int main(int argc, char** argv) { return tubelab::run_cli(argc, argv); }
