# Tests package for LoL AI Coach
