import os
import sys

# Add the project directory to the system path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from wreath.cli import main

if __name__ == "__main__":
    sys.exit(main())
