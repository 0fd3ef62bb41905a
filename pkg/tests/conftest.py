import os
import sys

# Make the shared test-oracle module importable from every test file.
sys.path.insert(0, os.path.dirname(__file__))
