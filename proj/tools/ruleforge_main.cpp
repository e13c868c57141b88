#include "ruleforge/cli.hpp"

int main(int argc, char** argv) { return rf::cli_main(argc, argv); }
