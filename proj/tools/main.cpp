#include "polytree/commands.hpp"

int main(int argc, char** argv) { return polytree::run_cli(argc, argv); }
