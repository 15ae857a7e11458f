"""
Command-line tools: instance generation, solving and benchmarking.
"""
