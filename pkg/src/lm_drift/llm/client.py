"""
Chat-completion client for any OpenAI-compatible endpoint (Ollama's /v1,
vLLM, hosted APIs). Temperature is fixed to 0.
"""

import logging
from typing import Optional, Tuple

import requests

from ..errors import ExtractionServiceError
from ..http import make_session
from .prompts import ExtractionRequest

logger = logging.getLogger(__name__)


class ChatClient:
    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key: Optional[str] = None,
        timeout: float = 60.0,
        max_retries: int = 3,
        session: Optional[requests.Session] = None,
    ):
        self.endpoint = endpoint.rstrip("/")
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.session = session or make_session(max_retries=max_retries, methods=("GET", "POST"))

    def _headers(self):
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        return headers

    def check_server(self) -> Tuple[bool, Optional[str]]:
        """Check ``{endpoint}/models``; returns (reachable, error message)."""
        try:
            resp = self.session.get(f"{self.endpoint}/models", headers=self._headers(), timeout=5)
            if resp.status_code == 200:
                return True, None
            return False, f"Unexpected status {resp.status_code} from {self.endpoint}/models"
        except requests.exceptions.RequestException as e:
            return False, str(e)

    def complete(self, request: ExtractionRequest) -> str:
        payload = {
            "model": self.model,
            "messages": request.messages(),
            "temperature": 0,
            "stream": False,
        }
        try:
            resp = self.session.post(
                f"{self.endpoint}/chat/completions",
                json=payload,
                headers=self._headers(),
                timeout=self.timeout,
            )
            resp.raise_for_status()
            body = resp.json()
        except requests.exceptions.RequestException as e:
            raise ExtractionServiceError(request.paper_id, str(e)) from e
        except ValueError as e:
            raise ExtractionServiceError(request.paper_id, "response is not JSON") from e

        try:
            content = body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as e:
            raise ExtractionServiceError(request.paper_id, f"unexpected response shape: {str(body)[:200]}") from e
        return content or ""
