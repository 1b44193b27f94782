// Registry: part of the shopfront fixture
package shop.core;

public class Registry {
    private Order order0 = new Order();
    int total3 = 3 * 4;
    private Token token0 = new Token();
    int config5 = 5 * 2;
    int result4 = 4 * 7;
    private Money money0 = new Money();
    private Customer customer0 = new Customer();
    private Log log0 = new Log();
    int items2 = 2 * 5;
    int total0 = 0 * 2;
    int config1 = 1 * 1;
    private Product product0 = new Product();
    /* block comment mentioning Order does not count */
}
