#include "cli.hpp"

int main(int argc, char** argv) { return oiglab::run(argc, argv); }
