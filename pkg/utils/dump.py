"""
Persist results in the workplace directory.

Reports, verdicts and exported generator sets are written as files under the
configured WORKPLACE when ENABLE_DUMP is set.
"""

import json
import logging
import os
from typing import Any, Callable, Optional

from utils.configure import get_workplace, is_dump_enabled

logger = logging.getLogger(__name__)

ENABLE_DUMP = is_dump_enabled()


def workplace_path(filename: str) -> str:
    workplace = get_workplace()
    os.makedirs(workplace, exist_ok=True)
    return os.path.join(workplace, filename)


def save_result(result: Any, filename: str, description: str = "result") -> Optional[str]:
    """
    Save a JSON-serializable result into the workplace.

    Args:
        result: Data to save
        filename: File name inside the workplace
        description: Label used in the progress message

    Returns:
        Path of the written file, or None when dumping is disabled
    """
    if not ENABLE_DUMP:
        return None
    path = workplace_path(filename)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(result, f, indent=2, ensure_ascii=False)
    logger.info("Saved %s to: %s", description, path)
    return path


def save_text(text: str, filename: str, description: str = "document") -> Optional[str]:
    if not ENABLE_DUMP:
        return None
    path = workplace_path(filename)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info("Saved %s to: %s", description, path)
    return path


def get_data_from_file_or_generate(filename: str, generate_func: Callable[[], Any],
                                   description: str = "data") -> Any:
    """
    Load a cached JSON result from the workplace, generating and saving it when absent.

    Args:
        filename: File name inside the workplace
        generate_func: Producer called on a cache miss
        description: Label used in progress messages

    Returns:
        The loaded or generated data
    """
    path = os.path.join(get_workplace(), filename)
    if ENABLE_DUMP:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
                logger.info("Loaded %s from: %s", description, path)
                return data
        except (FileNotFoundError, json.JSONDecodeError) as e:
            logger.info("No cached %s (%s); generating", description, e)
    data = generate_func()
    save_result(data, filename, description)
    return data
