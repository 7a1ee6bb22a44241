import sys

from uqsl2_studio.cli.main import main

sys.exit(main())
