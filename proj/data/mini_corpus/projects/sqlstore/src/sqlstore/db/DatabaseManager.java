package sqlstore.db;

import sqlstore.query.QueryParser;

public class DatabaseManager {
    private ConnectionPool pool;
    private QueryParser parser;

    public void connect(String url) {
        pool = new ConnectionPool(url, 8);
    }

    public Connection acquire() {
        return pool.borrow();
    }

    public void shutdown() {
        pool.drain();
    }
}
