# Unit tests for LoL AI Coach
