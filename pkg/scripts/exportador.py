#!/usr/bin/env python3
"""
Módulo Exportador - Simulador de Bolhas Periódicas
Grava tabelas em CSV (cabeçalho obrigatório, ponto decimal, fim de linha LF)
e resultados em JSON dentro do envelope com versão, configuração ecoada,
timestamp, payload e hash do payload.
"""

import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from config_simulacao import VERSAO
from registro import log


def normalizar(valor: Any) -> Any:
    """Converte para tipos JSON: NaN/inf viram null, complexos viram [re, im]."""
    if isinstance(valor, Enum):
        return valor.value
    if isinstance(valor, pd.DataFrame):
        return [normalizar(r) for r in valor.to_dict(orient='records')]
    if isinstance(valor, dict):
        return {str(k): normalizar(v) for k, v in valor.items()}
    if isinstance(valor, (list, tuple, np.ndarray)):
        return [normalizar(v) for v in valor]
    if isinstance(valor, (bool, np.bool_)):
        return bool(valor)
    if isinstance(valor, (int, np.integer)):
        return int(valor)
    if isinstance(valor, (float, np.floating)):
        valor = float(valor)
        return valor if math.isfinite(valor) else None
    if isinstance(valor, complex):
        return [normalizar(valor.real), normalizar(valor.imag)]
    return valor


def json_canonico(payload: Any) -> str:
    return json.dumps(normalizar(payload), sort_keys=True, separators=(',', ':'),
                      ensure_ascii=False, allow_nan=False)


def gerar_hash_payload(payload: Any) -> str:
    """
    SHA-256 do payload em JSON canônico (chaves ordenadas, sem espaços).

    Args:
        payload: Conteúdo do resultado, sem timestamp nem logs

    Returns:
        Hash hexadecimal
    """
    return hashlib.sha256(json_canonico(payload).encode('utf-8')).hexdigest()


@dataclass
class ResultEnvelope:
    subcomando: str
    config: Dict
    payload: Any
    logs: List[str] = field(default_factory=list)
    versao: str = VERSAO
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec='seconds'))

    @property
    def payload_hash(self) -> str:
        return gerar_hash_payload(self.payload)

    def como_dict(self) -> Dict:
        return {
            'version': self.versao,
            'subcommand': self.subcomando,
            'config': normalizar(self.config),
            'timestamp': self.timestamp,
            'payload': normalizar(self.payload),
            'payload_hash': self.payload_hash,
            'logs': list(self.logs),
        }


def _abrir(caminho: Optional[str]):
    if caminho in (None, '-'):
        return sys.stdout, False
    diretorio = os.path.dirname(caminho)
    if diretorio:
        os.makedirs(diretorio, exist_ok=True)
    return open(caminho, 'w', encoding='utf-8', newline=''), True


def escrever_csv(df: pd.DataFrame, caminho: Optional[str]) -> None:
    """CSV com cabeçalho, campos vazios para NaN e fim de linha LF."""
    arquivo, fechar = _abrir(caminho)
    try:
        df.to_csv(arquivo, index=False, lineterminator='\n', na_rep='')
    finally:
        if fechar:
            arquivo.close()
    if fechar:
        log(f"CSV salvo: {caminho} ({len(df)} linhas)")


def escrever_json(documento: Any, caminho: Optional[str]) -> None:
    """Um documento JSON UTF-8 por arquivo."""
    arquivo, fechar = _abrir(caminho)
    try:
        json.dump(normalizar(documento), arquivo, ensure_ascii=False, indent=2, allow_nan=False)
        arquivo.write('\n')
    finally:
        if fechar:
            arquivo.close()
    if fechar:
        log(f"JSON salvo: {caminho}")


def caminho_auxiliar(caminho: Optional[str], sufixo: str) -> Optional[str]:
    """'saida/traj.csv' + 'events.json' -> 'saida/traj.events.json'."""
    if caminho in (None, '-'):
        return None
    raiz, _ = os.path.splitext(caminho)
    return f"{raiz}.{sufixo}"


def ler_envelope(caminho: str) -> Dict:
    with open(caminho, encoding='utf-8') as f:
        return json.load(f)
