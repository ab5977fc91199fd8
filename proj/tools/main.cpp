#include "qholo/cli.hpp"

int main(int argc, char** argv) { return qholo::cli_main(argc, argv); }
