# Test fixtures for LoL AI Coach
