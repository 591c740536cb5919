#!/usr/bin/env python3
"""Start the HTTP service with a local library.

Usage: python scripts/serve.py [store_dir] [port]
"""

import logging
import sys

import uvicorn

from speechpractice.api import ServiceConfig, create_app


def main() -> None:
    store = sys.argv[1] if len(sys.argv) > 1 else "./library"
    port = int(sys.argv[2]) if len(sys.argv) > 2 else 8077
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    config = ServiceConfig(store_path=store, port=port, frontend_dir="frontend/dist")
    uvicorn.run(create_app(config=config), host=config.host, port=config.port)


if __name__ == "__main__":
    main()
