# Integration tests for LoL AI Coach
