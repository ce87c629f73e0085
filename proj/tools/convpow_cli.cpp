#include "convpow/report.hpp"

int main(int argc, char** argv) { return convpow::run_cli(argc, argv); }
