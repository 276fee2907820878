import sys

from secrecy_regions.main import main

sys.exit(main())
