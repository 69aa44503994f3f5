"""
cliquetfidf Application Entry Point
"""

import sys

from core.errors import ConfigError


def main(argv=None):
    """Main application entry point"""
    try:
        # config is read on import; a bad environment value fails here
        from app_controller import PipelineAppController
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return PipelineAppController().run(argv)


if __name__ == "__main__":
    sys.exit(main())
